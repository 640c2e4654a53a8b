#include "espart/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace espart {

namespace {

// x mod 1 in [0, 1), exact on integers.
double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

}  // namespace

int thread_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("ESPART_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 256) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
  }();
  return cap;
}

IntervalUnion IntervalUnion::from_sorted(std::vector<Segment> segs) {
  IntervalUnion u;
  double total = 0.0;
  for (const Segment& s : segs) total += s.length();
  u.segs_ = std::move(segs);
  u.measure_ = total;
  return u;
}

IntervalUnion IntervalUnion::normalize(const std::vector<std::pair<double, double>>& raw) {
  std::vector<Segment> segs;
  segs.reserve(raw.size() + 4);
  for (const auto& [a, b] : raw) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw InputError("interval endpoint is not finite");
    }
    if (a == b) {
      throw InputError("degenerate interval: equal endpoints");
    }
    if (a >= 0.0 && b > a && b <= 1.0) {
      // Already in range: keep the endpoints bit-exact so normalization is
      // idempotent.
      segs.push_back({a, b});
      continue;
    }
    // b > a covers the plain arc (clipped at one full turn); b < a wraps
    // through the seam.
    const double len = b > a ? std::min(b - a, 1.0) : wrap_unit(b - a);
    if (len <= 0.0) continue;  // zero after wrapping: a whole number of turns
    const double lo = wrap_unit(a);
    const double hi = lo + len;
    if (hi <= 1.0) {
      segs.push_back({lo, hi});
    } else {
      segs.push_back({lo, 1.0});
      segs.push_back({0.0, hi - 1.0});
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  std::vector<Segment> merged;
  for (const Segment& s : segs) {
    if (s.length() <= 0.0) continue;
    if (!merged.empty() && s.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, s.hi);
    } else {
      merged.push_back(s);
    }
  }
  return from_sorted(std::move(merged));
}

IntervalUnion IntervalUnion::complement() const {
  std::vector<Segment> out;
  double prev = 0.0;
  for (const Segment& s : segs_) {
    if (s.lo > prev) out.push_back({prev, s.lo});
    prev = s.hi;
  }
  if (prev < 1.0) out.push_back({prev, 1.0});
  return from_sorted(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Segment> segs = segs_;
  segs.insert(segs.end(), other.segs_.begin(), other.segs_.end());
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  std::vector<Segment> merged;
  for (const Segment& s : segs) {
    if (!merged.empty() && s.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, s.hi);
    } else {
      merged.push_back(s);
    }
  }
  return from_sorted(std::move(merged));
}

bool IntervalUnion::contains_almost(const IntervalUnion& sub, double tol) const {
  return unite(sub).measure() <= measure() + tol;
}

void CoverSpec::validate() const {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double l = lengths[i];
    if (!(l > 0.0) || !(l <= 1.0) || !std::isfinite(l)) {
      throw InputError("cover length out of (0, 1]");
    }
    if (i > 0 && l > lengths[i - 1]) {
      throw InputError("cover lengths must be nonincreasing");
    }
  }
  if (split_z < 0) throw InputError("split index Z must be nonnegative");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  if (tail) {
    if (!(tail->c > 0.0) || !(tail->rho > 0.0) || !(tail->rho < 1.0)) {
      throw InputError("geometric tail needs c > 0 and rho in (0, 1)");
    }
    if (tail->from_n != explicit_count() + 1) {
      throw InputError("geometric tail must start right after the explicit lengths");
    }
    const double first = tail->c * std::pow(tail->rho, tail->from_n);
    if (first > 1.0) throw InputError("geometric tail starts above 1");
    if (!lengths.empty() && first > lengths.back()) {
      throw InputError("geometric tail exceeds the last explicit length");
    }
    // rho^alpha < 1 holds for every rho in (0,1); guarded anyway.
    if (!(std::pow(tail->rho, alpha) < 1.0)) {
      throw InputError("tail diverges under alpha");
    }
  }
  if (centers && static_cast<int>(centers->size()) > 0 && lengths.empty() && !tail) {
    throw InputError("centers without any lengths");
  }
}

double CoverSpec::length_at(int n) const {
  if (n < 1) throw InputError("cover index is 1-based");
  if (n <= explicit_count()) return lengths[static_cast<std::size_t>(n - 1)];
  if (tail) return tail->c * std::pow(tail->rho, n);
  return 0.0;
}

double CoverSpec::head_sum(int m) const {
  double total = 0.0;
  const int expl = std::min(m, explicit_count());
  for (int n = 1; n <= expl; ++n) total += lengths[static_cast<std::size_t>(n - 1)];
  if (tail && m >= tail->from_n) {
    // sum_{n=t}^{m} c rho^n = c (rho^t - rho^{m+1}) / (1 - rho)
    const double t = tail->from_n;
    total += tail->c * (std::pow(tail->rho, t) - std::pow(tail->rho, m + 1)) / (1.0 - tail->rho);
  }
  return total;
}

double CoverSpec::sum_after(int m) const {
  double total = 0.0;
  for (int n = std::max(1, m + 1); n <= explicit_count(); ++n) {
    total += lengths[static_cast<std::size_t>(n - 1)];
  }
  if (tail) {
    const int start = std::max(m + 1, tail->from_n);
    total += tail->c * std::pow(tail->rho, start) / (1.0 - tail->rho);
  }
  return total;
}

double CoverSpec::alpha_sum_after(int m) const {
  double total = 0.0;
  for (int n = std::max(1, m + 1); n <= explicit_count(); ++n) {
    total += std::pow(lengths[static_cast<std::size_t>(n - 1)], alpha);
  }
  if (tail) {
    // sum_{n>=start} (c rho^n)^alpha = c^alpha q^start / (1 - q), q = rho^alpha
    const int start = std::max(m + 1, tail->from_n);
    const double q = std::pow(tail->rho, alpha);
    total += std::pow(tail->c, alpha) * std::pow(q, start) / (1.0 - q);
  }
  return total;
}

CoverSpec CoverSpec::scaled(double tau) const {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw InputError("scale factor must lie in (0, 1]");
  CoverSpec out = *this;
  for (double& l : out.lengths) l *= tau;
  if (out.tail) out.tail->c *= tau;
  return out;
}

CoverCost cover_cost(const CoverSpec& c) {
  c.validate();
  CoverCost cost;
  cost.head = c.head_sum(c.split_z);
  cost.tail_alpha = c.alpha_sum_after(c.split_z);
  cost.total = cost.head + cost.tail_alpha;
  cost.admissible = cost.total < 1.0;
  return cost;
}

double sum_lengths(const CoverSpec& c) {
  c.validate();
  return c.head_sum(c.explicit_count()) + c.sum_after(c.explicit_count());
}

IntervalUnion realize_cover(const CoverSpec& c, int n_max) {
  c.validate();
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  if (!c.centers || static_cast<int>(c.centers->size()) < n_max) {
    std::ostringstream msg;
    msg << "cover has no centers for the first " << n_max << " intervals";
    throw InputError(msg.str());
  }
  std::vector<std::pair<double, double>> raw;
  raw.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double l = c.length_at(n);
    if (l <= 0.0) break;  // finite cover exhausted
    const double center = (*c.centers)[static_cast<std::size_t>(n - 1)];
    raw.emplace_back(center - l / 2.0, center + l / 2.0);
  }
  return IntervalUnion::normalize(raw);
}

}  // namespace espart
