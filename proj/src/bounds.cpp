#include "espart/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace espart {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<double> freqs,
                               std::vector<std::complex<double>> coeffs)
    : frequencies(std::move(freqs)), coefficients(std::move(coeffs)) {
  if (frequencies.empty()) throw InputError("exponential sum needs at least one term");
  if (frequencies.size() != coefficients.size()) {
    throw InputError("frequency and coefficient counts differ");
  }
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (!std::isfinite(frequencies[i])) throw InputError("non-finite frequency");
    if (i > 0 && frequencies[i] <= frequencies[i - 1]) {
      throw InputError("frequencies must be strictly increasing");
    }
  }
}

double TrigPolynomial::coeff_energy() const {
  double total = 0.0;
  for (const auto& a : coefficients) total += std::norm(a);
  return total;
}

std::complex<double> oscillatory_integral(double nu, const RealInterval& I) {
  const double len = I.length();
  if (nu == 0.0) return {len, 0.0};
  if (std::abs(nu) * len < 1e-8) {
    // Cancellation in the endpoint difference destroys precision here; the
    // phase-extracted product is exact and stable.
    const double arg = std::numbers::pi * nu * len;
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, std::numbers::pi * nu * (I.lo + I.hi)));
    return phase * (len * sinc(arg));
  }
  const std::complex<double> num =
      std::exp(std::complex<double>(0.0, kTwoPi * nu * I.hi)) -
      std::exp(std::complex<double>(0.0, kTwoPi * nu * I.lo));
  return num / std::complex<double>(0.0, kTwoPi * nu);
}

double exact_energy(const TrigPolynomial& p, const RealInterval& I) {
  if (!(I.length() > 0.0)) throw InputError("interval must have positive length");
  const std::size_t n = p.frequencies.size();
  double energy = p.coeff_energy() * I.length();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double nu = p.frequencies[i] - p.frequencies[k];
      const std::complex<double> kernel = oscillatory_integral(nu, I);
      energy += 2.0 * std::real(p.coefficients[i] * std::conj(p.coefficients[k]) * kernel);
    }
  }
  return energy;
}

MvReport mv_check(const TrigPolynomial& p, const RealInterval& I,
                  std::optional<double> declared_delta) {
  MvReport rep;
  if (declared_delta) {
    if (!(*declared_delta > 0.0)) throw InputError("declared separation must be positive");
    rep.delta = *declared_delta;
  } else {
    if (p.frequencies.size() < 2) {
      throw InputError("a single frequency needs a declared separation");
    }
    double best = p.frequencies[1] - p.frequencies[0];
    for (std::size_t i = 2; i < p.frequencies.size(); ++i) {
      best = std::min(best, p.frequencies[i] - p.frequencies[i - 1]);
    }
    rep.delta = best;
  }
  const double t = I.length();
  rep.coeff_energy = p.coeff_energy();
  // The lower bound is reported as-is when vacuous (T <= 1/delta).
  rep.lower = (t - 1.0 / rep.delta) * rep.coeff_energy;
  rep.upper = (t + 1.0 / rep.delta) * rep.coeff_energy;
  rep.energy = exact_energy(p, I);
  const double tol = 1e-9 * rep.coeff_energy;
  rep.holds = rep.lower - tol <= rep.energy && rep.energy <= rep.upper + tol;
  return rep;
}

int max_index_spread(const PointSetWindow& w, double k) {
  if (!(k > 0.0)) throw InputError("gap threshold must be positive");
  const auto& p = w.points();
  if (p.size() < 2) return 0;
  int best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (j + 1 < p.size() && p[j + 1] - p[i] <= k) ++j;
    if (j < i) j = i;
    best = std::max(best, static_cast<int>(j - i));
  }
  return best;
}

std::vector<double> density_scale_grid(const PointSetWindow& w) {
  const double r_max = std::max(w.span() / 2.0, 4.0);
  std::vector<double> grid;
  for (int r = 1; r <= 16 && r <= r_max; ++r) grid.push_back(static_cast<double>(r));
  double g = 16.0;
  while (g * 1.5 <= r_max) {
    g *= 1.5;
    grid.push_back(std::round(g));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

DensityScale choose_density_scale(const PointSetWindow& w, double beta, double eps) {
  if (!(beta > 0.0) || !(beta <= 1.0)) throw InputError("beta must lie in (0, 1]");
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  if (w.empty()) throw InputError("density scale needs a nonempty window");

  DensityScale out;
  out.grid = density_scale_grid(w);
  out.profile.reserve(out.grid.size());
  for (double r : out.grid) out.profile.push_back(d_plus_profile(w, beta, r));

  // Smallest scale whose tail stays within eps of it, confirmed by at least
  // one strictly later scale.
  for (std::size_t idx = 0; idx + 1 < out.grid.size(); ++idx) {
    bool stable = true;
    for (std::size_t k = idx; k < out.grid.size(); ++k) {
      if (out.profile[k] > out.profile[idx] + eps) {
        stable = false;
        break;
      }
    }
    if (stable) {
      out.scale = out.grid[idx];
      out.profile_at_scale = out.profile[idx];
      out.sup_count = sup_count(w, out.scale);
      out.window_only = !w.certified();
      return out;
    }
  }
  std::ostringstream msg;
  msg << "no scale stabilizes the density profile on this window (grid";
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    msg << (i == 0 ? " " : ", ") << out.grid[i] << ":" << out.profile[i];
  }
  msg << ")";
  throw HypothesisError(msg.str());
}

SubsampleDensityCheck verify_subsample_density(const PointSetWindow& w, double beta,
                                               double eps, int n, double r,
                                               const std::vector<double>& r_grid) {
  if (n < 1) throw InputError("modulus must be at least 1");
  if (!(r > 0.0)) throw InputError("scale must be positive");
  SubsampleDensityCheck out;
  out.bound = 2.0 * std::pow(r, -beta) + eps;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (double s : r_grid) {
    if (s < r) throw InputError("verification scales must not go below the chosen scale");
  }
  for (int j = 1; j <= n; ++j) {
    const PointSetWindow sub = subsample(w, n, j);
    for (double s : r_grid) {
      const double value = sub.empty() ? 0.0 : d_plus_profile(sub, beta, s);
      const double margin = out.bound - value;
      if (margin < out.worst_margin) {
        out.worst_margin = margin;
        out.worst_class = j;
        out.worst_scale = s;
      }
    }
  }
  if (!std::isfinite(out.worst_margin)) out.worst_margin = out.bound;
  out.pass = out.worst_margin >= 0.0;
  return out;
}

double interval_energy_bound(const PointSetWindow& w, double ell) {
  if (!(ell > 0.0) || !(ell <= 1.0)) throw InputError("interval length must lie in (0, 1]");
  return 2.0 * ell * static_cast<double>(sup_count(w, 1.0 / ell));
}

}  // namespace espart
