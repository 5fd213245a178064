#pragma once

// delta(n_1, ..., n_k) = tau - inf { tau(L_1) + ... + tau(L_k) } over mutually
// orthogonal subspaces L_j of dimension n_j, computed by multistart descent on
// the orthogonal group.
//
// A configuration is an orthogonal frame Q together with a partition of some
// of its columns into blocks. For a fixed partition the objective is a sum of
// sectional curvatures of column pairs, each a quadratic form w^T M w in the
// bivector w = q_a ^ q_b, so its gradient is available in closed form.
// Frames move by Q <- Q exp(-t D) with D skew-symmetric (L-BFGS direction in
// the body coordinates), and between descents the partition is re-chosen for
// the current frame.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "chendelta/delta_tuple.hpp"
#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"
#include "chendelta/random.hpp"

namespace chendelta {

struct SubspaceConfig {
  MatrixXd frame;                       // orthogonal, columns e_1..e_n
  std::vector<std::vector<int>> blocks;  // column indices of L_1..L_k

  // Columns not assigned to any block, ascending.
  std::vector<int> remainder() const {
    std::vector<bool> used(frame.cols(), false);
    for (const auto& b : blocks)
      for (int c : b) used[c] = true;
    std::vector<int> r;
    for (int c = 0; c < frame.cols(); ++c)
      if (!used[c]) r.push_back(c);
    return r;
  }
};

inline void check_config(const CurvatureTensor& R, const DeltaTuple& t,
                         const SubspaceConfig& cfg) {
  const int n = R.dim();
  if (t.n() != n) throw InvalidArgument("tuple dimension does not match tensor");
  if (cfg.frame.rows() != n || cfg.frame.cols() != n) {
    throw InvalidArgument("configuration frame must be n x n");
  }
  const double dev = orthonormality_defect(cfg.frame);
  if (dev > 1e-10) throw NotOrthonormal("configuration frame is not orthogonal", dev);
  if (int(cfg.blocks.size()) != t.k()) {
    throw InvalidArgument("configuration has " + std::to_string(cfg.blocks.size()) +
                          " blocks, tuple has " + std::to_string(t.k()));
  }
  std::vector<bool> used(n, false);
  for (int j = 0; j < t.k(); ++j) {
    if (int(cfg.blocks[j].size()) != t.parts()[j]) {
      throw InvalidArgument("block " + std::to_string(j + 1) + " has size " +
                            std::to_string(cfg.blocks[j].size()) + ", expected " +
                            std::to_string(t.parts()[j]));
    }
    for (int c : cfg.blocks[j]) {
      if (c < 0 || c >= n || used[c]) throw InvalidArgument("blocks overlap or exceed n");
      used[c] = true;
    }
  }
}

inline double config_objective(const CurvatureTensor& R, const DeltaTuple& t,
                               const SubspaceConfig& cfg) {
  check_config(R, t, cfg);
  double s = 0.0;
  for (const auto& b : cfg.blocks) {
    MatrixXd basis(R.dim(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) basis.col(i) = cfg.frame.col(b[i]);
    s += tau_subspace(R, basis);
  }
  return s;
}

struct DeltaOptions {
  int restarts = 32;
  int max_iterations = 500;
  std::uint64_t seed = 0;
  int threads = 1;
  double grad_tol = 1e-10;
};

struct DeltaDiagnostics {
  int restarts = 0;
  // Second-best minus best restart value; absent with a single restart.
  std::optional<double> gap;
  bool converged = false;      // the winning restart met a stopping test
  int converged_restarts = 0;
  long iterations = 0;         // summed over restarts
};

struct DeltaResult {
  double value = 0.0;  // delta
  double tau = 0.0;
  double inf = 0.0;    // best sum of tau(L_j)
  SubspaceConfig config;
  DeltaDiagnostics diagnostics;
};

namespace detail {

// Evaluates sums of sectional curvatures of frame column pairs through the
// bivector operator.
class PairObjective {
 public:
  explicit PairObjective(const CurvatureTensor& R)
      : n_(R.dim()), M_(bivector_operator(R)), index_(n_ * n_, -1) {
    int I = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) index_[a * n_ + b] = I++;
  }

  int dim() const { return n_; }

  VectorXd wedge(const VectorXd& x, const VectorXd& y) const {
    VectorXd w(M_.rows());
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) w[index_[a * n_ + b]] = x[a] * y[b] - x[b] * y[a];
    return w;
  }

  // R(x, y, y, x).
  double pair_value(const VectorXd& x, const VectorXd& y) const {
    const VectorXd w = wedge(x, y);
    return w.dot(M_ * w);
  }

  MatrixXd pair_table(const MatrixXd& Q) const {
    MatrixXd K = MatrixXd::Zero(n_, n_);
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        K(a, b) = K(b, a) = pair_value(Q.col(a), Q.col(b));
    return K;
  }

  // Objective over consecutive blocks of Q's columns, with Euclidean gradient.
  double value_and_gradient(const MatrixXd& Q, const std::vector<int>& parts,
                            MatrixXd* G) const {
    double f = 0.0;
    if (G) G->setZero(n_, n_);
    int start = 0;
    MatrixXd A(n_, n_);
    for (int p : parts) {
      for (int a = start; a < start + p; ++a)
        for (int b = a + 1; b < start + p; ++b) {
          const VectorXd w = wedge(Q.col(a), Q.col(b));
          const VectorXd Mw = M_ * w;
          f += w.dot(Mw);
          if (!G) continue;
          A.setZero();
          for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
              A(i, j) = Mw[index_[i * n_ + j]];
              A(j, i) = -A(i, j);
            }
          G->col(a) += 2.0 * A * Q.col(b);
          G->col(b) -= 2.0 * A * Q.col(a);
        }
      start += p;
    }
    return f;
  }

 private:
  int n_;
  MatrixXd M_;
  std::vector<int> index_;
};

inline double assignment_value(const MatrixXd& K,
                               const std::vector<std::vector<int>>& blocks) {
  double s = 0.0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) s += K(b[i], b[j]);
  return s;
}

// Best partition of frame columns into blocks of the given sizes, for a
// table K of pair curvatures. Exhaustive (lexicographic order, first minimum
// kept) for n <= 6, greedy pair swaps otherwise.
inline std::vector<std::vector<int>> best_assignment(const MatrixXd& K,
                                                     const std::vector<int>& parts) {
  const int n = static_cast<int>(K.rows());
  const double tie = 1e-13 * (1.0 + K.cwiseAbs().maxCoeff());
  std::vector<std::vector<int>> best, cur(parts.size());
  double best_val = std::numeric_limits<double>::infinity();

  if (n <= 6) {
    std::vector<bool> used(n, false);
    auto choose = [&](auto&& self, std::size_t blk, int from, double acc) -> void {
      if (blk == parts.size()) {
        if (acc < best_val - tie) {
          best_val = acc;
          best = cur;
        }
        return;
      }
      auto& b = cur[blk];
      if (int(b.size()) == parts[blk]) {
        self(self, blk + 1, 0, acc);
        return;
      }
      for (int c = from; c < n; ++c) {
        if (used[c]) continue;
        double add = 0.0;
        for (int m : b) add += K(m, c);
        used[c] = true;
        b.push_back(c);
        self(self, blk, c + 1, acc + add);
        b.pop_back();
        used[c] = false;
      }
    };
    choose(choose, 0, 0, 0.0);
    return best;
  }

  // Greedy: start from consecutive columns, swap pairs while it helps.
  std::vector<int> owner(n, -1);
  int c = 0;
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (int i = 0; i < parts[j]; ++i) owner[c++] = int(j);
  auto blocks_of = [&]() {
    std::vector<std::vector<int>> b(parts.size());
    for (int i = 0; i < n; ++i)
      if (owner[i] >= 0) b[owner[i]].push_back(i);
    return b;
  };
  best = blocks_of();
  best_val = assignment_value(K, best);
  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < n && !improved; ++i)
      for (int j = i + 1; j < n && !improved; ++j) {
        if (owner[i] == owner[j]) continue;
        std::swap(owner[i], owner[j]);
        const auto cand = blocks_of();
        const double v = assignment_value(K, cand);
        if (v < best_val - tie) {
          best_val = v;
          best = cand;
          improved = true;
        } else {
          std::swap(owner[i], owner[j]);
        }
      }
  }
  return best;
}

inline MatrixXd reorthonormalize(const MatrixXd& Q) {
  Eigen::HouseholderQR<MatrixXd> qr(Q);
  MatrixXd P = qr.householderQ();
  const MatrixXd Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < P.cols(); ++j)
    if (Rm(j, j) < 0) P.col(j) = -P.col(j);
  return P;
}

inline MatrixXd skew_part(const MatrixXd& X) { return 0.5 * (X - X.transpose()); }

struct LocalResult {
  MatrixXd Q;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// L-BFGS on O(n) for the consecutive-block objective.
inline LocalResult descend(const PairObjective& obj, MatrixXd Q,
                           const std::vector<int>& parts, const DeltaOptions& opt) {
  const int n = obj.dim();
  constexpr int kMemory = 6;
  constexpr int kStallWindow = 20;
  MatrixXd G(n, n);
  double f = obj.value_and_gradient(Q, parts, &G);
  MatrixXd g = skew_part(Q.transpose() * G);
  std::deque<MatrixXd> S, Y;
  std::deque<double> rho;
  std::deque<double> history{f};
  LocalResult res;
  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    const double gnorm = g.norm();
    if (gnorm <= opt.grad_tol * (1.0 + std::abs(f))) {
      res.converged = true;
      break;
    }
    // Two-loop recursion.
    MatrixXd q = g;
    std::vector<double> alpha(S.size());
    for (int i = int(S.size()) - 1; i >= 0; --i) {
      alpha[i] = rho[i] * (S[i].cwiseProduct(q)).sum();
      q -= alpha[i] * Y[i];
    }
    double gamma = 1.0 / std::max(gnorm, 1e-300);
    if (!S.empty()) {
      gamma = (S.back().cwiseProduct(Y.back())).sum() / Y.back().squaredNorm();
    }
    MatrixXd d = gamma * q;
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double beta = rho[i] * (Y[i].cwiseProduct(d)).sum();
      d += (alpha[i] - beta) * S[i];
    }
    double slope = (g.cwiseProduct(d)).sum();
    if (!(slope > 0.0)) {  // not a descent direction: fall back to gradient
      S.clear(), Y.clear(), rho.clear();
      d = g / std::max(gnorm, 1e-300);
      slope = (g.cwiseProduct(d)).sum();
    }
    // Armijo backtracking along Q exp(-t d).
    double t = 1.0, fn = f;
    MatrixXd Qn, Gn(n, n);
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Qn = Q * MatrixXd(-t * d).exp();
      fn = obj.value_and_gradient(Qn, parts, nullptr);
      if (fn <= f - 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no representable decrease left
      break;
    }
    Qn = reorthonormalize(Qn);
    fn = obj.value_and_gradient(Qn, parts, &Gn);
    const MatrixXd gn = skew_part(Qn.transpose() * Gn);
    const MatrixXd s = -t * d, y = gn - g;
    const double sy = (s.cwiseProduct(y)).sum();
    if (sy > 1e-16 * s.norm() * y.norm()) {
      S.push_back(s), Y.push_back(y), rho.push_back(1.0 / sy);
      if (int(S.size()) > kMemory) S.pop_front(), Y.pop_front(), rho.pop_front();
    }
    Q = Qn, f = fn, g = gn;
    history.push_back(f);
    if (int(history.size()) > kStallWindow) {
      history.pop_front();
      if (history.front() - f < 1e-12) {
        res.converged = true;
        break;
      }
    }
  }
  res.Q = Q;
  res.value = f;
  return res;
}

// Reorders Q so that the given blocks become consecutive leading columns,
// followed by the remaining columns in ascending order.
inline MatrixXd block_order(const MatrixXd& Q, const std::vector<std::vector<int>>& blocks) {
  const int n = static_cast<int>(Q.cols());
  std::vector<bool> used(n, false);
  std::vector<int> order;
  for (const auto& b : blocks)
    for (int c : b) order.push_back(c), used[c] = true;
  for (int c = 0; c < n; ++c)
    if (!used[c]) order.push_back(c);
  MatrixXd P(Q.rows(), n);
  for (int i = 0; i < n; ++i) P.col(i) = Q.col(order[i]);
  return P;
}

inline std::vector<std::vector<int>> consecutive_blocks(const std::vector<int>& parts) {
  std::vector<std::vector<int>> b;
  int c = 0;
  for (int p : parts) {
    b.emplace_back(p);
    std::iota(b.back().begin(), b.back().end(), c);
    c += p;
  }
  return b;
}

struct RestartResult {
  MatrixXd Q;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

inline RestartResult run_restart(const PairObjective& obj, const DeltaTuple& t,
                                 const DeltaOptions& opt, int restart) {
  const int n = obj.dim();
  MatrixXd Q;
  if (restart == 0) {
    Q = MatrixXd::Identity(n, n);
  } else {
    Rng rng = make_rng(opt.seed, std::uint64_t(restart));
    Q = random_orthogonal(rng, n);
  }
  const auto& parts = t.parts();
  const auto consecutive = consecutive_blocks(parts);
  RestartResult out;
  constexpr int kRounds = 6;
  for (int round = 0; round < kRounds; ++round) {
    const auto blocks = best_assignment(obj.pair_table(Q), parts);
    if (round > 0 && blocks == consecutive) break;
    Q = block_order(Q, blocks);
    const LocalResult lr = descend(obj, Q, parts, opt);
    Q = lr.Q;
    out.iterations += lr.iterations;
    out.converged = lr.converged;
  }
  out.Q = Q;
  out.value = obj.value_and_gradient(Q, parts, nullptr);
  return out;
}

}  // namespace detail

inline DeltaResult delta_invariant(const CurvatureTensor& R, const DeltaTuple& t,
                                   const DeltaOptions& opt = {}) {
  if (t.n() != R.dim()) throw InvalidArgument("tuple dimension does not match tensor");
  if (opt.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (opt.max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  const detail::PairObjective obj(R);
  std::vector<detail::RestartResult> runs(opt.restarts);

  const int workers = std::clamp(opt.threads, 1, opt.restarts);
  if (workers == 1) {
    for (int r = 0; r < opt.restarts; ++r) runs[r] = detail::run_restart(obj, t, opt, r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < opt.restarts; r += workers)
          runs[r] = detail::run_restart(obj, t, opt, r);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic reduction: smallest value, earliest restart on ties.
  int best = 0;
  for (int r = 1; r < opt.restarts; ++r)
    if (runs[r].value < runs[best].value) best = r;

  DeltaResult res;
  res.tau = scalar_tau(R);
  res.inf = runs[best].value;
  res.value = res.tau - res.inf;
  res.config.frame = runs[best].Q;
  res.config.blocks = detail::consecutive_blocks(t.parts());
  auto& dg = res.diagnostics;
  dg.restarts = opt.restarts;
  dg.converged = runs[best].converged;
  for (const auto& r : runs) {
    dg.iterations += r.iterations;
    dg.converged_restarts += r.converged ? 1 : 0;
  }
  if (opt.restarts > 1) {
    double second = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opt.restarts; ++r)
      if (r != best) second = std::min(second, runs[r].value);
    dg.gap = second - res.inf;
  }
  return res;
}

}  // namespace chendelta
