#include "espart/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace espart {

PointSetWindow::PointSetWindow(std::vector<double> points, bool certified,
                               std::optional<DensityBoundDescriptor> bound)
    : points_(std::move(points)), certified_(certified), bound_(std::move(bound)) {
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw InputError("point set contains a non-finite value");
    if (i > 0 && points_[i] == points_[i - 1]) {
      throw InputError("point set contains a repeated value");
    }
  }
  anchor_ = static_cast<int>(
      std::lower_bound(points_.begin(), points_.end(), 0.0) - points_.begin());
}

bool PointSetWindow::covers(double x, double h) const {
  if (points_.empty()) return false;
  return x - h >= front() && x + h <= back();
}

int count_in_cube(const PointSetWindow& w, double x, double h) {
  if (!(h > 0.0)) throw InputError("cube radius must be positive");
  const auto& p = w.points();
  const auto lo = std::lower_bound(p.begin(), p.end(), x - h);
  const auto hi = std::upper_bound(p.begin(), p.end(), x + h);
  return static_cast<int>(hi - lo);
}

double separation(const PointSetWindow& w) {
  if (w.size() < 2) throw InputError("separation needs at least two points");
  const auto& p = w.points();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < p.size(); ++i) best = std::min(best, p[i] - p[i - 1]);
  return best;
}

int sup_count(const PointSetWindow& w, double r) {
  if (!(r > 0.0)) throw InputError("scale must be positive");
  const auto& p = w.points();
  if (p.empty()) return 0;
  int best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (j + 1 < p.size() && p[j + 1] <= p[i] + 2.0 * r) ++j;
    if (j < i) j = i;
    best = std::max(best, static_cast<int>(j - i + 1));
  }
  return best;
}

double d_plus_profile(const PointSetWindow& w, double alpha, double r) {
  if (alpha < 0.0) throw InputError("profile exponent must be nonnegative");
  return static_cast<double>(sup_count(w, r)) / std::pow(r, alpha);
}

namespace {

// Exact minimum of the count over centers x in [lo, hi]: the count is
// piecewise constant with breakpoints at p_i -+ h, so evaluating at the
// breakpoints and between them is exhaustive.
int interior_inf_count(const PointSetWindow& w, double h, double lo, double hi) {
  const auto& p = w.points();
  std::vector<double> events;
  events.push_back(lo);
  events.push_back(hi);
  for (double x : p) {
    if (x - h > lo && x - h < hi) events.push_back(x - h);
    if (x + h > lo && x + h < hi) events.push_back(x + h);
  }
  std::sort(events.begin(), events.end());
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < events.size(); ++i) {
    best = std::min(best, count_in_cube(w, events[i], h));
    if (i + 1 < events.size() && events[i + 1] > events[i]) {
      best = std::min(best, count_in_cube(w, (events[i] + events[i + 1]) / 2.0, h));
    }
  }
  return best;
}

}  // namespace

DiscretenessProfile discreteness_profile(const PointSetWindow& w, double h) {
  if (!(h > 0.0)) throw InputError("scale must be positive");
  DiscretenessProfile out;
  if (w.empty()) {
    out.truncated = true;
    return out;
  }
  out.sup_count = sup_count(w, h);
  const double lo = w.front() + h;
  const double hi = w.back() - h;
  if (lo > hi) {
    // No window of radius h fits in the span; the observed inf is 0.
    out.inf_count = 0;
    out.truncated = true;
    return out;
  }
  out.inf_count = interior_inf_count(w, h, lo, hi);
  return out;
}

DensityReport density_estimate(const PointSetWindow& w, double r,
                               const std::vector<double>& h_grid) {
  if (h_grid.empty()) throw InputError("scale grid is empty");
  if (!(r > 0.0)) throw InputError("density exponent must be positive");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw InputError("scales must be positive");
    if (i > 0 && h_grid[i] <= h_grid[i - 1]) throw InputError("scale grid must increase");
  }
  DensityReport rep;
  rep.r = r;
  rep.h_values = h_grid;
  for (double h : h_grid) {
    const auto prof = discreteness_profile(w, h);
    const double vol = std::pow(2.0 * h, r);
    rep.sup_curve.push_back(prof.sup_count / vol);
    rep.inf_curve.push_back(prof.inf_count / vol);
    rep.truncated = rep.truncated || prof.truncated;
  }
  if (!w.empty() && h_grid.back() > w.span() / 2.0) rep.truncated = true;
  const std::size_t n = h_grid.size();
  const std::size_t start = n - std::max<std::size_t>(1, n / 3);
  double dp = 0.0;
  double dm = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i < n; ++i) {
    dp = std::max(dp, rep.sup_curve[i]);
    dm = std::min(dm, rep.inf_curve[i]);
  }
  rep.d_plus_estimate = dp;
  rep.d_minus_estimate = std::isfinite(dm) ? dm : 0.0;
  return rep;
}

namespace {

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return 0.0;
  return (n * sxy - sx * sy) / den;
}

}  // namespace

DimEstimate dim_estimate(const PointSetWindow& w, const std::vector<double>& h_grid) {
  if (h_grid.size() < 3) throw InputError("dimension estimate needs at least 3 scales");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw InputError("scales must be positive");
    if (i > 0 && h_grid[i] <= h_grid[i - 1]) throw InputError("scale grid must increase");
  }
  if (w.empty()) throw InputError("dimension estimate needs a nonempty window");

  DimEstimate est;
  std::vector<double> lx_sup, ly_sup, lx_inf, ly_inf;
  for (double h : h_grid) {
    const auto prof = discreteness_profile(w, h);
    est.truncated = est.truncated || prof.truncated;
    if (prof.sup_count > 0) {
      lx_sup.push_back(std::log(h));
      ly_sup.push_back(std::log(static_cast<double>(prof.sup_count)));
    }
    if (prof.inf_count > 0) {
      lx_inf.push_back(std::log(h));
      ly_inf.push_back(std::log(static_cast<double>(prof.inf_count)));
    }
  }
  if (h_grid.back() > w.span() / 2.0) est.truncated = true;
  if (lx_sup.size() < 3) throw InputError("dimension estimate needs 3 scales with points");
  est.dim_plus = std::clamp(regression_slope(lx_sup, ly_sup), 0.0, 1.0);
  // Fewer than 3 scales with a positive interior count means the lower
  // density vanishes at the observed scales.
  est.dim_minus =
      lx_inf.size() < 3 ? 0.0 : std::clamp(regression_slope(lx_inf, ly_inf), 0.0, 1.0);
  return est;
}

PointSetWindow subsample(const PointSetWindow& w, int n, int j) {
  if (n < 1) throw InputError("subsample modulus must be at least 1");
  if (j < 1 || j > n) throw InputError("subsample class must lie in 1..N");
  const int anchor = w.anchor_position();
  std::vector<double> picked;
  const int residue = j % n;
  for (int t = 0; t < w.size(); ++t) {
    const int g = t - anchor;
    const int mod = ((g % n) + n) % n;
    if (mod == residue) picked.push_back(w.points()[static_cast<std::size_t>(t)]);
  }
  return PointSetWindow(std::move(picked), w.certified(), w.density_bound());
}

}  // namespace espart
