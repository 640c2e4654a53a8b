#pragma once

#include <optional>
#include <vector>

#include "espart/common.hpp"

namespace espart {

// Analytic count bound asserted by the user: #(set ∩ [x-r, x+r]) <= C * r^beta_bar
// for all r >= 1 and all x.
struct DensityBoundDescriptor {
  double beta_bar = 1.0;
  double c = 1.0;
};

// Finite sorted window of a bi-infinite frequency set. Indexing is anchored
// so that index 0 is the smallest point >= 0; negative indices extend left.
// `certified` marks the window as declared representative of the full set,
// so sup/inf statistics over it may be read as global; otherwise consumers
// flag results as window-only.
class PointSetWindow {
 public:
  PointSetWindow() = default;
  explicit PointSetWindow(std::vector<double> points, bool certified = false,
                          std::optional<DensityBoundDescriptor> bound = std::nullopt);

  const std::vector<double>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double span() const { return points_.empty() ? 0.0 : points_.back() - points_.front(); }
  bool certified() const { return certified_; }
  const std::optional<DensityBoundDescriptor>& density_bound() const { return bound_; }

  // Global index of position t (0-based array position minus anchor).
  int anchor_position() const { return anchor_; }

  // True when [x-h, x+h] lies inside the window span.
  bool covers(double x, double h) const;

 private:
  std::vector<double> points_;
  bool certified_ = false;
  std::optional<DensityBoundDescriptor> bound_;
  int anchor_ = 0;
};

// Exact count of points in the closed interval [x-h, x+h].
int count_in_cube(const PointSetWindow& w, double x, double h);

// Minimum consecutive gap; needs at least two points.
double separation(const PointSetWindow& w);

// sup over all centers of the count in a closed window of radius r (the sup
// is attained with both window endpoints at data points, so a sliding
// two-pointer scan is exact).
int sup_count(const PointSetWindow& w, double r);

// sup_x #(set ∩ [x-r, x+r]) / r^alpha over all real centers.
double d_plus_profile(const PointSetWindow& w, double alpha, double r);

struct DiscretenessProfile {
  int sup_count = 0;
  int inf_count = 0;
  // True when no window of radius h fits inside the span, so the inf is
  // reported as 0 by convention.
  bool truncated = false;
};

// Finite-window sup/inf of counts at scale h. The inf ranges over centers
// whose window lies inside the observed span.
DiscretenessProfile discreteness_profile(const PointSetWindow& w, double h);

struct DensityReport {
  double r = 1.0;
  std::vector<double> h_values;
  std::vector<double> sup_curve;  // count / (2h)^r, per unit window volume
  std::vector<double> inf_curve;
  double d_plus_estimate = 0.0;   // max of sup_curve over the largest third of scales
  double d_minus_estimate = 0.0;  // min of inf_curve over the largest third
  bool truncated = false;
};

// Finite-window surrogate for the asymptotic upper/lower densities with
// respect to r. Curves are normalized per unit window volume (2h)^r so a
// unit-spaced set reports density 1. Estimates are taken over the largest
// third of the scale grid; `truncated` marks any scale not fully observable.
DensityReport density_estimate(const PointSetWindow& w, double r,
                               const std::vector<double>& h_grid);

struct DimEstimate {
  double dim_plus = 0.0;
  double dim_minus = 0.0;
  bool truncated = false;
};

// Log-log regression of window counts against scale over the supplied grid
// (callers choose the asymptotic range). Slope of sup counts estimates the
// upper dimension, slope of interior inf counts the lower one; both are
// clamped to [0, 1]. Requires at least 3 scales.
DimEstimate dim_estimate(const PointSetWindow& w, const std::vector<double>& h_grid);

// Every N-th point: keeps global indices congruent to j (mod N), j in 1..N.
// The union over j of the N subsamples is the whole window.
PointSetWindow subsample(const PointSetWindow& w, int n, int j);

}  // namespace espart
