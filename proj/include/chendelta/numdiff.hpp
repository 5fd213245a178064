#pragma once

// Central finite differences for smooth evaluators. The value type of the
// callable only needs +, - and division by a double (double, Eigen vectors and
// matrices all qualify).

#include <Eigen/Dense>

#include <vector>

namespace chendelta::numdiff {

inline constexpr double kFirstStep = 1e-4;
inline constexpr double kSecondStep = 1e-4;

// Error model of the second-order central stencils at step h for a function
// whose derivatives are of size `scale`: truncation h^2 plus rounding eps/h^2.
inline double truncation_estimate(double h, double scale = 1.0) {
  return scale * (h * h + 2.2e-16 / (h * h));
}

// Derivative of f at x along the chart direction v.
template <class Fn>
auto directional(Fn&& f, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                 double h = kFirstStep) {
  using R = decltype(f(x));
  R hi = f(x + h * v);
  R lo = f(x - h * v);
  return R((hi - lo) / (2.0 * h));
}

template <class Fn>
auto partial(Fn&& f, const Eigen::VectorXd& x, int axis,
             double h = kFirstStep) {
  return directional(f, x, Eigen::VectorXd::Unit(x.size(), axis), h);
}

template <class Fn>
auto gradient(Fn&& f, const Eigen::VectorXd& x, double h = kFirstStep) {
  using R = decltype(f(x));
  std::vector<R> out;
  out.reserve(x.size());
  for (int a = 0; a < x.size(); ++a) out.push_back(partial(f, x, a, h));
  return out;
}

// Mixed second partial d^2 f / dx_a dx_b by the four-point stencil. On the
// diagonal this is the standard second difference with step 2h.
template <class Fn>
auto second_partial(Fn&& f, const Eigen::VectorXd& x, int a, int b,
                    double h = kSecondStep) {
  using R = decltype(f(x));
  const Eigen::VectorXd ea = h * Eigen::VectorXd::Unit(x.size(), a);
  const Eigen::VectorXd eb = h * Eigen::VectorXd::Unit(x.size(), b);
  R pp = f(x + ea + eb);
  R pm = f(x + ea - eb);
  R mp = f(x - ea + eb);
  R mm = f(x - ea - eb);
  return R((pp - pm - mp + mm) / (4.0 * h * h));
}

// Symmetric table of second partials, row-major a*n+b.
template <class Fn>
auto hessian(Fn&& f, const Eigen::VectorXd& x, double h = kSecondStep) {
  using R = decltype(f(x));
  const int n = static_cast<int>(x.size());
  std::vector<R> out(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      out[std::size_t(a) * n + b] = second_partial(f, x, a, b, h);
      out[std::size_t(b) * n + a] = out[std::size_t(a) * n + b];
    }
  return out;
}

}  // namespace chendelta::numdiff
