// Shared end-to-end instance: the quarter-powers cover with rational centers
// and the cube-gap frequency window.
#pragma once

#include <cmath>
#include <vector>

#include "espart/constructions.hpp"
#include "espart/intervals.hpp"
#include "espart/pointset.hpp"

namespace fixtures {

// l_n = 4^{-(n+2)} with an explicit head of rational centers and the exact
// geometric tail; F-bar = 1/48, cover cost at alpha = 1/2 is 1/4.
inline espart::CoverSpec quarter_powers_cover(int explicit_count = 12) {
  espart::CoverSpec c;
  for (int n = 1; n <= explicit_count; ++n) c.lengths.push_back(std::pow(4.0, -(n + 2)));
  c.tail = espart::GeometricTail{1.0 / 16.0, 0.25, explicit_count + 1};
  c.centers = espart::farey_centers(explicit_count);
  c.split_z = 0;
  c.alpha = 0.5;
  return c;
}

// {sign(n) n^3 : 1 <= |n| <= n_max} together with 0.
inline espart::PointSetWindow cube_window(int n_max = 60) {
  std::vector<double> pts{0.0};
  for (int n = 1; n <= n_max; ++n) {
    const double c = static_cast<double>(n) * n * n;
    pts.push_back(c);
    pts.push_back(-c);
  }
  return espart::PointSetWindow(std::move(pts));
}

inline espart::PointSetWindow integer_window(int lo, int hi) {
  std::vector<double> pts;
  for (int i = lo; i <= hi; ++i) pts.push_back(static_cast<double>(i));
  return espart::PointSetWindow(std::move(pts));
}

}  // namespace fixtures
