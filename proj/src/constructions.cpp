#include "espart/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace espart {

std::vector<double> farey_centers(int count) {
  if (count < 0) throw InputError("center count must be nonnegative");
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(count));
  for (long long q = 1; static_cast<int>(centers.size()) < count; ++q) {
    if (q == 1) {
      centers.push_back(0.0);
      continue;
    }
    for (long long p = 1; p < q && static_cast<int>(centers.size()) < count; ++p) {
      if (std::gcd(p, q) == 1) {
        centers.push_back(static_cast<double>(p) / static_cast<double>(q));
      }
    }
  }
  return centers;
}

CoverSpec hkw_cover(int n_max, const HkwRule& rule) {
  if (n_max < 1) throw InputError("cover needs at least one interval");
  CoverSpec cover;
  cover.centers = farey_centers(n_max);
  cover.split_z = 0;
  switch (rule.kind) {
    case HkwRule::Kind::dyadic:
      for (int n = 1; n <= n_max; ++n) cover.lengths.push_back(std::pow(2.0, -(n + 1)));
      cover.tail = GeometricTail{0.5, 0.5, n_max + 1};
      break;
    case HkwRule::Kind::inverse_square: {
      if (!(rule.sum > 0.0) || !(rule.sum < 1.0)) {
        throw InputError("inverse-square rule needs a total in (0, 1)");
      }
      const double scale = rule.sum * 6.0 / (std::numbers::pi * std::numbers::pi);
      for (int n = 1; n <= n_max; ++n) {
        cover.lengths.push_back(scale / (static_cast<double>(n) * n));
      }
      break;
    }
  }
  cover.validate();
  return cover;
}

namespace {

// Smallest integer >= j^gamma, with values within 1e-12 of an integer
// snapped so exact powers do not round up.
std::int64_t ceil_power(int j, double gamma) {
  const double t = std::pow(static_cast<double>(j), gamma);
  const double snapped =
      std::abs(t - std::round(t)) < 1e-12 * std::max(1.0, t) ? std::round(t) : t;
  return static_cast<std::int64_t>(std::ceil(snapped));
}

}  // namespace

EasycorWindow easycor_lambda(const EasycorParams& params) {
  if (!(params.beta > 2.0 / 3.0) || !(params.beta < 1.0)) {
    throw InputError("beta must lie strictly between 2/3 and 1");
  }
  if (params.j_max < 1) throw InputError("j_max must be at least 1");

  EasycorWindow win;
  win.beta = params.beta;
  win.gamma = (1.0 - params.beta) / params.beta;

  std::vector<double> points;
  std::int64_t prev_end = std::numeric_limits<std::int64_t>::min();
  for (int j = 1; j <= params.j_max; ++j) {
    const std::int64_t step = ceil_power(j, win.gamma);
    std::int64_t start = 0;
    if (params.schedule == EasycorParams::Schedule::desk) {
      if (params.j_max > 48) {
        throw InputError("desk schedule is exact only up to j_max = 48");
      }
      start = static_cast<std::int64_t>(j) * (std::int64_t{1} << j) * step;
    } else {
      // 2^(2^j): block interiors stop being exactly representable as
      // doubles beyond j = 5.
      if (params.j_max > 5) {
        throw InputError(
            "paper schedule is exact only up to j_max = 5; use the desk schedule");
      }
      start = std::int64_t{1} << (std::int64_t{1} << j);
    }
    if (start <= prev_end) {
      std::ostringstream msg;
      msg << "schedule violates block disjointness at j = " << j;
      throw InputError(msg.str());
    }
    for (int a = 0; a <= j; ++a) {
      points.push_back(static_cast<double>(start + a * step));
    }
    prev_end = start + static_cast<std::int64_t>(j) * step;
    win.blocks.push_back({j, step, start, j + 1});
  }
  win.schedule = params.schedule == EasycorParams::Schedule::desk ? "desk" : "paper";
  win.window = PointSetWindow(std::move(points));
  return win;
}

std::vector<BlockDensityCheck> easycor_density_check(const EasycorWindow& win, double eta) {
  std::vector<BlockDensityCheck> out;
  out.reserve(win.blocks.size());
  for (const EasycorBlock& b : win.blocks) {
    BlockDensityCheck chk;
    chk.block = b.index;
    chk.scale = std::pow(static_cast<double>(b.index), win.gamma + 1.0);
    chk.sup_count = sup_count(win.window, chk.scale);
    chk.lo = b.index * (1.0 - eta);
    chk.hi = (2.0 * b.index + 1.0) * (1.0 + eta);
    chk.pass = chk.sup_count >= chk.lo && chk.sup_count <= chk.hi;
    out.push_back(chk);
  }
  return out;
}

ProgressionSearch progression_check(const PointSetWindow& w, int n_sub, double delta,
                                    long long search_budget) {
  if (n_sub < 1) throw InputError("subsample modulus must be at least 1");
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (search_budget < 1) throw InputError("search budget must be positive");

  std::vector<std::int64_t> sub;
  {
    const PointSetWindow s = subsample(w, n_sub, n_sub);
    sub.reserve(static_cast<std::size_t>(s.size()));
    for (double p : s.points()) {
      const double r = std::nearbyint(p);
      if (std::abs(p - r) > 1e-9) {
        throw InputError("progression search needs integer-valued points");
      }
      sub.push_back(static_cast<std::int64_t>(r));
    }
  }

  ProgressionSearch out;
  out.best_value = std::numeric_limits<double>::infinity();
  if (sub.size() < 3) return out;  // nothing longer than a pair exists

  const auto value_of = [](std::int64_t step, int n_prog) {
    const double ln = std::log(static_cast<double>(n_prog));
    return static_cast<double>(step) / std::sqrt(static_cast<double>(n_prog)) * ln * ln * ln;
  };

  // Maximal equal-gap runs, left to right; within a run the shortest
  // progression is tried first.
  std::size_t run_start = 0;
  while (run_start + 1 < sub.size()) {
    const std::int64_t step = sub[run_start + 1] - sub[run_start];
    std::size_t run_end = run_start + 1;
    while (run_end + 1 < sub.size() && sub[run_end + 1] - sub[run_end] == step) ++run_end;
    const int run_points = static_cast<int>(run_end - run_start + 1);
    for (int n_prog = 2; n_prog <= run_points - 1; ++n_prog) {
      if (out.candidates_examined >= search_budget) {
        out.budget_exhausted = true;
        return out;
      }
      ++out.candidates_examined;
      const double value = value_of(step, n_prog);
      if (value < out.best_value) {
        out.best_value = value;
        out.best_step = step;
        out.best_n_prog = n_prog;
      }
      if (value < delta) {
        ProgressionCertificate cert;
        cert.start = sub[run_start];
        cert.step = step;
        cert.n_prog = n_prog;
        cert.delta = delta;
        cert.value = value;
        cert.contained = true;
        for (int a = 0; a <= n_prog; ++a) {
          const std::int64_t term = cert.start + static_cast<std::int64_t>(a) * step;
          cert.contained =
              cert.contained && std::binary_search(sub.begin(), sub.end(), term);
        }
        if (cert.contained) {
          out.found = true;
          out.certificate = cert;
          return out;
        }
      }
    }
    run_start = run_end;
  }
  return out;
}

}  // namespace espart
