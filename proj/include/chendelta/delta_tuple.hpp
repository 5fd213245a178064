#pragma once

// Admissible tuples (n_1, ..., n_k) for the delta-invariants of an
// n-dimensional space: 2 <= n_j < n and n_1 + ... + n_k <= n.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "chendelta/error.hpp"

namespace chendelta {

class DeltaTuple {
 public:
  DeltaTuple(int n, std::vector<int> parts) : n_(n), parts_(std::move(parts)) {
    if (n < 3) throw InvalidArgument("delta tuples need n >= 3");
    if (parts_.empty()) throw InvalidArgument("delta tuple needs at least one part");
    std::sort(parts_.begin(), parts_.end());
    for (int p : parts_) {
      if (p < 2 || p >= n) {
        throw InvalidArgument("tuple part " + std::to_string(p) +
                              " violates 2 <= n_j < n = " + std::to_string(n));
      }
    }
    if (N() > n) {
      throw InvalidArgument("tuple parts sum to " + std::to_string(N()) +
                            " > n = " + std::to_string(n));
    }
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const noexcept { return parts_; }
  int N() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  // A = sum 1/(2 + n_j).
  double A() const {
    double a = 0.0;
    for (int p : parts_) a += 1.0 / (2.0 + p);
    return a;
  }

  // Sign of A - 1/3 in exact integer arithmetic: -1, 0 or +1.
  int compare_A_with_third() const {
    // A - 1/3 = (3 sum_j prod_{i != j} d_i - prod d_i) / (3 prod d_i), d = 2 + n_j.
    std::int64_t prod = 1;
    for (int p : parts_) prod *= (2 + p);
    std::int64_t num = 0;
    for (int p : parts_) num += 3 * (prod / (2 + p));
    num -= prod;
    return (num > 0) - (num < 0);
  }

  // sum n_j (n_j - 1) / 2 subtracted from n(n-1)/2.
  double b() const {
    double s = double(n_) * (n_ - 1);
    for (int p : parts_) s -= double(p) * (p - 1);
    return 0.5 * s;
  }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
  }

  friend bool operator==(const DeltaTuple& a, const DeltaTuple& b) {
    return a.n_ == b.n_ && a.parts_ == b.parts_;
  }

 private:
  int n_;
  std::vector<int> parts_;
};

// All admissible tuples for dimension n, shortest first, then
// lexicographically.
inline std::vector<DeltaTuple> enumerate_tuples(int n) {
  if (n < 3) throw InvalidArgument("enumerate_tuples needs n >= 3");
  std::vector<std::vector<int>> found;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int min_part, int remaining) -> void {
    if (!cur.empty()) found.push_back(cur);
    for (int p = min_part; p < n && p <= remaining; ++p) {
      cur.push_back(p);
      self(self, p, remaining - p);
      cur.pop_back();
    }
  };
  rec(rec, 2, n);
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<DeltaTuple> out;
  out.reserve(found.size());
  for (auto& f : found) out.emplace_back(n, std::move(f));
  return out;
}

// Parses "2,3" (whitespace tolerated) into a tuple for dimension n.
inline DeltaTuple parse_tuple(int n, const std::string& spec) {
  std::vector<int> parts;
  std::string item;
  std::istringstream is(spec);
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed tuple '" + spec + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw InvalidArgument("malformed tuple '" + spec + "'");
    parts.push_back(v);
  }
  return DeltaTuple(n, std::move(parts));
}

}  // namespace chendelta
