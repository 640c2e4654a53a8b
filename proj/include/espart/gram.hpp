#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "espart/intervals.hpp"
#include "espart/pointset.hpp"

namespace espart {

// Hermitian matrix of inner products of restricted exponentials
// { e^{2 pi i lambda x} 1_E : lambda in freqs }:
//   G(n, m) = ∫_E e^{2 pi i (lambda_n - lambda_m) x} dx,
// diagonal identically measure(E). Extremal eigenvalues are the
// finite-section Riesz bounds of the system.
struct GramSection {
  std::vector<double> frequencies;
  IntervalUnion set;
  Eigen::MatrixXcd matrix;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

inline constexpr int kDefaultMaxGramSize = 512;

// Assembles the section with the same stabilized oscillatory kernel used for
// energies. Frequencies must be strictly increasing; size is capped.
GramSection gram_matrix(const IntervalUnion& e, std::span<const double> freqs,
                        int max_size = kDefaultMaxGramSize);

// Dense Hermitian eigensolve (absolute tolerance well below the 1e-10
// contract for sections up to the size cap). Verifies Hermiticity to 1e-12
// entrywise and fills lambda_min / lambda_max on the section.
std::pair<double, double> extremal_eigs(GramSection& g);

struct RieszMarginReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double target_lower = 0.0;
  double margin = 0.0;       // lambda_min - target_lower
  double set_measure = 0.0;  // measure of the set the Gram was built on
  bool complement_mode = false;
  bool degenerate = false;   // zero-measure set
  bool pass = false;         // margin > 0
};

// Lower-Riesz margin of the finite section against a target bound. With
// complement_mode the section is assembled on complement(E). A margin above
// zero is consistent with (never a proof of) the infinite-system claim; a
// margin at or below zero disproves it at this truncation.
RieszMarginReport riesz_margin(bool complement_mode, const IntervalUnion& e,
                               std::span<const double> freqs, double target_lower);

}  // namespace espart
