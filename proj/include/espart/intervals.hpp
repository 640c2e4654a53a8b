#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "espart/common.hpp"

namespace espart {

// One interval [lo, hi] with 0 <= lo < hi <= 1 after normalization.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Canonical disjoint union of intervals in the torus [0,1), |T| = 1.
// Segments are sorted by left endpoint and consecutive segments keep a
// strict gap (touching or overlapping inputs are merged).
class IntervalUnion {
 public:
  IntervalUnion() = default;

  // Builds the canonical union from raw (a, b) pairs read mod 1.
  // A pair with b > a covers the arc of length min(b - a, 1) starting at
  // a mod 1; a pair with b < a wraps around the torus seam and is split
  // at 0/1. Zero-length intervals are rejected; non-finite endpoints too.
  static IntervalUnion normalize(const std::vector<std::pair<double, double>>& raw);

  const std::vector<Segment>& segments() const { return segs_; }
  double measure() const { return measure_; }
  bool empty() const { return segs_.empty(); }

  // Complement within [0,1); measures add to 1.
  IntervalUnion complement() const;

  IntervalUnion unite(const IntervalUnion& other) const;

  // True when measure(sub \ this) <= tol, tested via the union measure.
  bool contains_almost(const IntervalUnion& sub, double tol) const;

 private:
  static IntervalUnion from_sorted(std::vector<Segment> segs);

  std::vector<Segment> segs_;
  double measure_ = 0.0;
};

// Analytic tail descriptor: lengths l_n = c * rho^n for n >= from_n.
struct GeometricTail {
  double c = 0.0;
  double rho = 0.0;
  int from_n = 1;
};

// Interval cover {E_n} with nonincreasing lengths: an explicit head
// (1-based n = 1..lengths.size()) plus an optional geometric tail.
// split_z and alpha parameterize the cover-cost functional.
struct CoverSpec {
  std::vector<double> lengths;
  std::optional<GeometricTail> tail;
  std::optional<std::vector<double>> centers;
  int split_z = 0;
  double alpha = 0.5;

  // Throws InputError on any construction violation: increasing lengths,
  // lengths outside (0,1], inconsistent tail, alpha outside (0,1).
  void validate() const;

  int explicit_count() const { return static_cast<int>(lengths.size()); }
  bool is_finite() const { return !tail.has_value(); }

  // l_n for 1-based n; 0 beyond a finite cover.
  double length_at(int n) const;

  // sum_{n<=m} l_n, closed form for the geometric part.
  double head_sum(int m) const;
  // sum_{n>m} l_n.
  double sum_after(int m) const;
  // sum_{n>m} l_n^alpha.
  double alpha_sum_after(int m) const;

  // Copy with all lengths (and tail coefficient) scaled by tau in (0,1].
  CoverSpec scaled(double tau) const;
};

struct CoverCost {
  double head = 0.0;        // sum_{n<=Z} l_n
  double tail_alpha = 0.0;  // sum_{n>Z} l_n^alpha
  double total = 0.0;
  bool admissible = false;  // total < 1
};

CoverCost cover_cost(const CoverSpec& c);

// Upper bound for |union E_n|: the plain length sum over the whole cover.
double sum_lengths(const CoverSpec& c);

// Normalized union of the first n_max intervals [center - l/2, center + l/2]
// mod 1. Centers must be present for n <= n_max.
IntervalUnion realize_cover(const CoverSpec& c, int n_max);

}  // namespace espart
