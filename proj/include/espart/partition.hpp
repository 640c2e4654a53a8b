#pragma once

#include <string>
#include <vector>

#include "espart/bounds.hpp"
#include "espart/intervals.hpp"
#include "espart/pointset.hpp"

namespace espart {

// One certified inequality: pass == (lhs < rhs) at evaluation time, except
// for budget checks which are non-strict (<=); `strict` records which.
struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = true;
  bool pass = false;
  double slack = 0.0;  // rhs - lhs
};

// Record of every constant extracted from the partition construction and of
// every inequality the construction rests on. A certificate is valid when
// all checks pass.
struct PartitionCertificate {
  double f_bar = 0.0;     // plain length sum of the cover (upper bound for |∪E_n|)
  double alpha = 0.0;
  double beta = 0.0;      // 1 - alpha
  double epsilon = 0.0;
  int m_cutoff = 0;       // cover split index M
  int k_separation = 0;   // integer separation budget K
  int l_star = 0;         // max index spread at gap K
  double r_scale = 0.0;   // stabilized density scale R
  int j_modulus = 0;      // sup count at scale R
  int n_modulus = 0;      // final partition modulus N >= max(j_modulus, l_star)
  double dim_plus_estimate = 0.0;
  bool epsilon_degenerate = false;  // epsilon below 1e-6
  bool window_only = false;         // window not certified
  double predicted_lower_riesz = 0.0;  // (1 - f_bar) / 4
  double predicted_upper_riesz = 0.0;  // 1 + 1/K
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  const CheckRecord* find_check(const std::string& name) const;
};

// epsilon = (1 - f_bar)/8; both room conditions then hold with slack
// factor 2. Throws HypothesisError when f_bar >= 1.
double choose_epsilon(double f_bar);

// Smallest cutoff m >= max(Z, 1) satisfying the three cutoff conditions
// (tail product, tail-epsilon budget, 1/l_m above the scale r). Throws
// HypothesisError naming the first unmet condition when none exists.
int choose_cutoff(const CoverSpec& c, double eps, double r);

// Smallest integer k with m/k < eps, floored at 2.
int choose_separation(int m, double eps);

struct ExtractOptions {
  // Scale grid for the upper-dimension estimate; empty selects a geometric
  // grid of 48 scales spanning [1, span/2].
  std::vector<double> dim_h_grid;
};

// Runs the whole constant extraction: cover admissibility and dimension
// hypothesis, epsilon, density scale (J, R), cutoff M, separation K, index
// spread L*, and the final modulus N (bumped until every residue class of
// the window is K-separated). Emits the full certificate.
PartitionCertificate extract(const CoverSpec& c, const PointSetWindow& w,
                             const ExtractOptions& opts = {});

// Re-evaluates every arithmetic check of a certificate from its stored
// constants and the cover. Used to detect tampered or stale certificates.
std::vector<CheckRecord> reevaluate_checks(const PartitionCertificate& cert,
                                           const CoverSpec& c);

struct ValidationEntry {
  int subsample_class = 0;
  int window_size = 0;       // requested size
  int effective_size = 0;    // clipped to the residue class population
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double margin_lower = 0.0; // lambda_min - predicted lower bound
  double margin_upper = 0.0; // predicted upper bound + tol - lambda_max
  bool pass = false;
};

struct ValidationReport {
  bool pass = false;
  double target_lower = 0.0;
  double upper_limit = 0.0;   // 1 + 1/K + tol
  double min_subsample_separation = 0.0;
  double worst_margin_lower = 0.0;
  double worst_margin_upper = 0.0;
  std::vector<ValidationEntry> entries;
  std::vector<std::string> failures;
};

// Empirical validation of a certificate: re-evaluates the stored checks,
// verifies that every residue class of the window is separated beyond K,
// and for each class and window size assembles the Gram section of
// complement(e) over nested blocks of consecutive subsample points,
// asserting lambda_min above (1 - f_bar)/4 and lambda_max below
// 1 + 1/K + upper_tol. e must lie inside the realized cover.
ValidationReport validate(const PartitionCertificate& cert, const CoverSpec& c,
                          const IntervalUnion& e, const PointSetWindow& w,
                          const std::vector<int>& window_sizes,
                          double upper_tol = 1e-8);

}  // namespace espart
