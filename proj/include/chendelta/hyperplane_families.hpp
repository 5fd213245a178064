#pragma once

// Non-minimal Lagrangian submanifolds attaining equality in the delta(n-1)
// inequalities.
//
// Flat ambient C^n:
//   L(lambda, u) = (n+1) e^{-i phase(lambda)} / ((n+1) mu(lambda) + i lambda) phi(u),
//   phase(lambda) = -((n+1)/n) arccsc((n+1) b lambda^{n/(1-n)}),
//   mu(lambda)    = sqrt(b^2 lambda^{2/(1-n)} - lambda^2/(n+1)^2),
// with arccsc on its principal branch, arccsc(s) = asin(1/s).
//
// CP^n(4), through a horizontal curve family in S^(2n+1):
//   L(t, u) = (e^{-i theta} phi(u), (i lambda/(n+1) - mu) e^{-n i theta}) / s,
//   s = sqrt(1 + mu^2 + lambda^2/(n+1)^2),
//   theta' = -lambda/(n+1), lambda' = (n-1) lambda mu,
//   mu' = -1 - mu^2 - n lambda^2/(n+1)^2.
//
// In both, phi is a minimal Legendrian immersion into S^(2n-1).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chendelta/error.hpp"
#include "chendelta/immersion.hpp"
#include "chendelta/legendrian.hpp"

namespace chendelta {

// Upper end of the admissible lambda-interval (0, lambda_max) of the flat
// family; both constraints degenerate there.
inline double flat_family_lambda_max(int n, double b) {
  return std::pow((n + 1) * b, double(n - 1) / n);
}

inline void check_flat_family_lambda(int n, double b, double lambda) {
  if (n < 2) throw InvalidArgument("flat hyperplane family needs n >= 2");
  if (!(b > 0.0)) throw InvalidArgument("flat hyperplane family needs b > 0");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double arg = (n + 1) * b * std::pow(lambda, double(n) / (1 - n));
  if (!(arg > 1.0)) {
    throw DomainError("arccsc argument (n+1) b lambda^(n/(1-n)) = " + std::to_string(arg) +
                      " is not above 1");
  }
  const double mu2 = b * b * std::pow(lambda, 2.0 / (1 - n)) - lambda * lambda / ((n + 1.0) * (n + 1.0));
  if (!(mu2 > 0.0)) {
    throw DomainError("mu^2 = b^2 lambda^(2/(1-n)) - lambda^2/(n+1)^2 = " + std::to_string(mu2) +
                      " is not positive");
  }
}

inline double phase_of_lambda(int n, double b, double lambda) {
  check_flat_family_lambda(n, b, lambda);
  const double arg = (n + 1) * b * std::pow(lambda, double(n) / (1 - n));
  return -double(n + 1) / n * std::asin(1.0 / arg);
}

inline double mu_of_lambda(int n, double b, double lambda) {
  check_flat_family_lambda(n, b, lambda);
  return std::sqrt(b * b * std::pow(lambda, 2.0 / (1 - n)) -
                   lambda * lambda / ((n + 1.0) * (n + 1.0)));
}

// Chart on [lambda_lo, lambda_hi] x [-pi, pi]^(n-1); the lambda-range
// defaults to [0.2, 0.8] lambda_max.
inline ImmersionChart flat_family_chart(int n, double b, const LegendrianTorus& phi,
                                      double lambda_lo = -1.0, double lambda_hi = -1.0) {
  if (phi.ambient_dim() != n) throw InvalidArgument("Legendrian must map into S^(2n-1)");
  const double lmax = flat_family_lambda_max(n, b);
  if (lambda_lo < 0) lambda_lo = 0.2 * lmax;
  if (lambda_hi < 0) lambda_hi = 0.8 * lmax;
  check_flat_family_lambda(n, b, lambda_lo);
  check_flat_family_lambda(n, b, lambda_hi);
  ImmersionChart ch;
  ch.n = n;
  ch.kind = AmbientKind::FLAT;
  ch.domain.lo = VectorXd::Constant(n, -std::numbers::pi);
  ch.domain.hi = VectorXd::Constant(n, std::numbers::pi);
  ch.domain.lo[0] = lambda_lo;
  ch.domain.hi[0] = lambda_hi;
  ch.name = "flat-hyperplane-family";
  ch.eval = [n, b, phi](const VectorXd& x) -> VectorXcd {
    const double lam = x[0];
    const double ph = phase_of_lambda(n, b, lam), mu = mu_of_lambda(n, b, lam);
    const cplx factor = double(n + 1) * std::polar(1.0, -ph) / cplx((n + 1) * mu, lam);
    return factor * phi(x.tail(n - 1));
  };
  return ch;
}

struct CurveState {
  double t = 0.0;
  double theta = 0.0;
  double lambda = 1.0;
  double mu = 0.0;
};

inline std::array<double, 3> curve_ode_rhs(int n, double /*theta*/, double lambda, double mu) {
  const double n1 = n + 1.0;
  return {-lambda / n1, (n - 1) * lambda * mu, -1.0 - mu * mu - n * lambda * lambda / (n1 * n1)};
}

class CurveTrajectory {
 public:
  CurveTrajectory(int n, std::vector<CurveState> nodes, double step, bool truncated)
      : n_(n), nodes_(std::move(nodes)), h_(step), truncated_(truncated) {}

  int n() const { return n_; }
  double step() const { return h_; }
  bool truncated() const { return truncated_; }
  const std::vector<CurveState>& nodes() const { return nodes_; }
  double t_begin() const { return nodes_.front().t; }
  double t_end() const { return nodes_.back().t; }

  // Dense output: one RK4 step from the nearest node.
  CurveState at(double t) const {
    if (t < t_begin() - 1e-14 || t > t_end() + 1e-14) {
      throw DomainError("t = " + std::to_string(t) + " outside the integrated range");
    }
    const long k = std::clamp(std::lround((t - t_begin()) / h_), 0L, long(nodes_.size()) - 1);
    return rk4_step(n_, nodes_[k], t - nodes_[k].t);
  }

  static CurveState rk4_step(int n, const CurveState& s, double h) {
    if (h == 0.0) return s;
    auto f = [n](double th, double la, double mu) { return curve_ode_rhs(n, th, la, mu); };
    const auto k1 = f(s.theta, s.lambda, s.mu);
    const auto k2 = f(s.theta + 0.5 * h * k1[0], s.lambda + 0.5 * h * k1[1], s.mu + 0.5 * h * k1[2]);
    const auto k3 = f(s.theta + 0.5 * h * k2[0], s.lambda + 0.5 * h * k2[1], s.mu + 0.5 * h * k2[2]);
    const auto k4 = f(s.theta + h * k3[0], s.lambda + h * k3[1], s.mu + h * k3[2]);
    CurveState o;
    o.t = s.t + h;
    o.theta = s.theta + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    o.lambda = s.lambda + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    o.mu = s.mu + h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
    return o;
  }

 private:
  int n_;
  std::vector<CurveState> nodes_;
  double h_;
  bool truncated_;
};

// Fixed-step RK4 from init.t to t_end. Stops (truncated) when lambda comes
// within lambda_floor of zero or the state stops being finite.
inline CurveTrajectory integrate_curve_ode(int n, const CurveState& init, double t_end, double step,
                                    double lambda_floor = 1e-12) {
  if (n < 2) throw InvalidArgument("ODE family needs n >= 2");
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
  if (!(t_end > init.t)) throw InvalidArgument("t_end must exceed the initial time");
  if (!(std::abs(init.lambda) > lambda_floor)) throw InvalidArgument("initial lambda must be nonzero");
  const long steps = std::lround((t_end - init.t) / step);
  std::vector<CurveState> nodes{init};
  bool truncated = false;
  for (long i = 0; i < steps; ++i) {
    CurveState next = CurveTrajectory::rk4_step(n, nodes.back(), step);
    next.t = init.t + (i + 1) * step;
    const bool finite = std::isfinite(next.theta) && std::isfinite(next.lambda) && std::isfinite(next.mu);
    if (!finite || std::abs(next.lambda) <= lambda_floor ||
        (next.lambda > 0) != (init.lambda > 0)) {
      truncated = true;
      break;
    }
    nodes.push_back(next);
  }
  return CurveTrajectory(n, std::move(nodes), step, truncated);
}

// Largest difference between a five-point difference quotient of the node
// values and the right-hand side, over interior nodes.
inline double curve_ode_residual(const CurveTrajectory& tr) {
  const auto& s = tr.nodes();
  const double h = tr.step();
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < s.size(); ++k) {
    auto d = [&](auto get) {
      return (-get(s[k + 2]) + 8 * get(s[k + 1]) - 8 * get(s[k - 1]) + get(s[k - 2])) / (12 * h);
    };
    const auto f = curve_ode_rhs(tr.n(), s[k].theta, s[k].lambda, s[k].mu);
    worst = std::max({worst, std::abs(d([](const CurveState& x) { return x.theta; }) - f[0]),
                      std::abs(d([](const CurveState& x) { return x.lambda; }) - f[1]),
                      std::abs(d([](const CurveState& x) { return x.mu; }) - f[2])});
  }
  return worst;
}

struct ConvergenceStudy {
  std::vector<double> steps;
  std::vector<double> residuals;
  std::vector<double> orders;  // log2 of successive residual ratios
};

// Residuals at step, step/2, step/4, ... (levels in total).
inline ConvergenceStudy curve_ode_convergence(int n, const CurveState& init, double t_end,
                                          double step, int levels = 3) {
  ConvergenceStudy st;
  for (int l = 0; l < levels; ++l) {
    const double h = step / std::pow(2.0, l);
    st.steps.push_back(h);
    st.residuals.push_back(curve_ode_residual(integrate_curve_ode(n, init, t_end, h)));
    if (l > 0) st.orders.push_back(std::log2(st.residuals[l - 1] / st.residuals[l]));
  }
  return st;
}

// Sphere chart on [t_lo, t_hi] x [-pi, pi]^(n-1). The t-window must lie
// inside the trajectory with room for differencing.
inline ImmersionChart sphere_family_chart(const CurveTrajectory& tr, const LegendrianTorus& phi,
                                      double t_lo, double t_hi) {
  const int n = tr.n();
  if (phi.ambient_dim() != n) throw InvalidArgument("Legendrian must map into S^(2n-1)");
  if (t_lo < tr.t_begin() || t_hi > tr.t_end() || !(t_lo < t_hi)) {
    throw DomainError(std::string("requested t-window exceeds the trajectory") +
                      (tr.truncated() ? " (trajectory was truncated)" : ""));
  }
  ImmersionChart ch;
  ch.n = n;
  ch.kind = AmbientKind::SPHERE;
  ch.domain.lo = VectorXd::Constant(n, -std::numbers::pi);
  ch.domain.hi = VectorXd::Constant(n, std::numbers::pi);
  ch.domain.lo[0] = t_lo;
  ch.domain.hi[0] = t_hi;
  ch.name = "sphere-hyperplane-family";
  ch.eval = [tr, phi, n](const VectorXd& x) -> VectorXcd {
    const CurveState s = tr.at(x[0]);
    const double n1 = n + 1.0;
    const double norm = std::sqrt(1.0 + s.mu * s.mu + s.lambda * s.lambda / (n1 * n1));
    VectorXcd z(n + 1);
    z.head(n) = std::polar(1.0, -s.theta) * phi(x.tail(n - 1)) / norm;
    z[n] = cplx(-s.mu, s.lambda / n1) * std::polar(1.0, -n * s.theta) / norm;
    return z;
  };
  return ch;
}

}  // namespace chendelta
