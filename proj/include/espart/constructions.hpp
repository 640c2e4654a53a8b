#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "espart/intervals.hpp"
#include "espart/pointset.hpp"

namespace espart {

// Deterministic enumeration of the rationals in [0,1): by denominator, then
// by numerator, reduced fractions only. Starts 0, 1/2, 1/3, 2/3, 1/4, 3/4, ...
std::vector<double> farey_centers(int count);

// Length rule for the rational-centered cover. `dyadic` gives l_n = 2^{-(n+1)}
// with the matching geometric tail (total 1/2); `inverse_square` gives the
// slower l_n = sum * (6/pi^2) / n^2 head with no analytic tail.
struct HkwRule {
  enum class Kind { dyadic, inverse_square };
  Kind kind = Kind::dyadic;
  double sum = 0.5;  // inverse_square only; must stay below 1
};

// Cover with centers enumerating the rationals and summable lengths; the
// configured total must stay below 1.
CoverSpec hkw_cover(int n_max, const HkwRule& rule = {});

struct EasycorParams {
  double beta = 0.8;  // required in (2/3, 1)
  int j_max = 24;
  enum class Schedule { desk, paper } schedule = Schedule::desk;
};

struct EasycorBlock {
  int index = 0;       // j
  std::int64_t step = 0;    // ceil(j^gamma)
  std::int64_t start = 0;   // Q_j
  int count = 0;       // j + 1 points
};

struct EasycorWindow {
  PointSetWindow window;
  std::vector<EasycorBlock> blocks;
  double beta = 0.0;
  double gamma = 0.0;  // (1 - beta) / beta
  std::string schedule;
};

// Lacunary block set: block j holds the j+1 points Q_j + a * ceil(j^gamma),
// 0 <= a <= j. The desk schedule Q_j = j * 2^j * ceil(j^gamma) keeps every
// point exactly representable up to j_max = 48; the paper schedule
// Q_j = 2^(2^j) is exact only up to j_max = 5.
EasycorWindow easycor_lambda(const EasycorParams& params);

struct BlockDensityCheck {
  int block = 0;
  double scale = 0.0;  // j^(gamma+1)
  int sup_count = 0;
  double lo = 0.0;     // j * (1 - eta)
  double hi = 0.0;     // (2j + 1) * (1 + eta): same-step blocks up to width 2h
  bool pass = false;
};

// Per-block count check at the block's natural scale. The admissible band
// accounts for larger blocks of the same step falling inside the window.
std::vector<BlockDensityCheck> easycor_density_check(const EasycorWindow& win,
                                                     double eta = 0.5);

// Arithmetic progression {start, start+step, ..., start + n_prog*step} inside
// the subsample, with value = step * n_prog^{-1/2} * (ln n_prog)^3 below the
// requested delta. `contained` is re-verified term by term.
struct ProgressionCertificate {
  std::int64_t start = 0;
  std::int64_t step = 0;
  int n_prog = 0;
  double delta = 0.0;
  double value = 0.0;
  bool contained = false;
  std::string log_base = "ln";
};

struct ProgressionSearch {
  bool found = false;
  std::optional<ProgressionCertificate> certificate;
  double best_value = 0.0;   // minimum value seen, also when nothing qualified
  std::int64_t best_step = 0;
  int best_n_prog = 0;
  long long candidates_examined = 0;
  bool budget_exhausted = false;
};

// Searches the subsample of every n_sub-th point (residue class n_sub) for a
// qualifying progression. Candidates are enumerated deterministically from
// maximal equal-gap runs, left to right, shortest progression first; the
// first certificate with value < delta is returned. Points must be integers.
ProgressionSearch progression_check(const PointSetWindow& w, int n_sub, double delta,
                                    long long search_budget = 1'000'000);

}  // namespace espart
