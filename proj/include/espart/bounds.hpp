#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "espart/pointset.hpp"

namespace espart {

struct RealInterval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

// Finite exponential sum sum_n a_n e^{2 pi i lambda_n t} with strictly
// increasing frequencies.
struct TrigPolynomial {
  std::vector<double> frequencies;
  std::vector<std::complex<double>> coefficients;

  TrigPolynomial(std::vector<double> freqs, std::vector<std::complex<double>> coeffs);

  double coeff_energy() const;  // sum |a_n|^2
};

// ∫_I e^{2 pi i nu t} dt. For nu = 0 this is the interval length; for
// |nu| * length < 1e-8 the phase-extracted product
//   e^{i pi nu (lo+hi)} * length * sinc(pi nu length)
// avoids the cancellation in the endpoint difference.
std::complex<double> oscillatory_integral(double nu, const RealInterval& I);

// ∫_I |p(t)|^2 dt in closed form via the pairwise kernel above.
double exact_energy(const TrigPolynomial& p, const RealInterval& I);

struct MvReport {
  double lower = 0.0;   // (T - 1/delta) * sum |a|^2, not clamped when negative
  double energy = 0.0;
  double upper = 0.0;   // (T + 1/delta) * sum |a|^2
  double delta = 0.0;
  double coeff_energy = 0.0;
  bool holds = false;
};

// Two-sided energy bounds for a separated exponential sum over any interval
// of length T (translation invariance is part of the contract). delta
// defaults to the computed separation; a single frequency needs a declared
// delta. Tolerance for `holds` is 1e-9 * sum |a|^2.
MvReport mv_check(const TrigPolynomial& p, const RealInterval& I,
                  std::optional<double> declared_delta = std::nullopt);

// Largest index difference whose frequency gap can still be <= K over the
// window: max { j - i : lambda_j - lambda_i <= K }. Index differences
// strictly above the returned value force a gap > K.
int max_index_spread(const PointSetWindow& w, double k);

// Deterministic scan grid for stabilization searches: integers 1..16, then
// round(16 * 1.5^k), capped at max(span/2, 4).
std::vector<double> density_scale_grid(const PointSetWindow& w);

struct DensityScale {
  double scale = 0.0;      // R: smallest grid scale with a stable tail
  int sup_count = 0;       // N: sup_x count at scale R
  double profile_at_scale = 0.0;
  std::vector<double> grid;
  std::vector<double> profile;
  bool window_only = false;  // window not certified
};

// Picks the smallest grid scale R such that every tested r >= R satisfies
// D+_beta(r) <= D+_beta(R) + eps, and returns it with N = sup count at R.
// A scale confirmed by no later grid point is rejected; if no scale
// qualifies, throws HypothesisError carrying the diagnostic curve.
DensityScale choose_density_scale(const PointSetWindow& w, double beta, double eps);

struct SubsampleDensityCheck {
  bool pass = false;
  double bound = 0.0;        // 2 R^{-beta} + eps
  double worst_margin = 0.0; // min over (j, r) of bound - profile
  int worst_class = 0;
  double worst_scale = 0.0;
};

// Empirical check of the subsample density guarantee: for each residue class
// j in 1..N and each r in r_grid, D+_{beta, subsample(w,N,j)}(r) must stay
// below 2 R^{-beta} + eps. A violation falsifies the window's
// representativity for the chosen (N, R), not the underlying estimate.
SubsampleDensityCheck verify_subsample_density(const PointSetWindow& w, double beta,
                                               double eps, int n, double r,
                                               const std::vector<double>& r_grid);

// Coefficient-free energy bound for an interval of length ell in (0, 1]:
// B = 2 * ell * sup_count(1/ell). Contract: exact_energy(p, I) <= B * sum|a|^2
// for every coefficient choice on the window's frequencies.
double interval_energy_bound(const PointSetWindow& w, double ell);

}  // namespace espart
