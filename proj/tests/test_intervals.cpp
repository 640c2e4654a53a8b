#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "espart/intervals.hpp"
#include "oracles.hpp"

using espart::CoverSpec;
using espart::GeometricTail;
using espart::IntervalUnion;

TEST_CASE("normalize merges overlaps") {
  const auto u = IntervalUnion::normalize({{0.1, 0.3}, {0.2, 0.5}});
  REQUIRE(u.segments().size() == 1);
  CHECK(u.segments()[0].lo == doctest::Approx(0.1));
  CHECK(u.segments()[0].hi == doctest::Approx(0.5));
  CHECK(u.measure() == doctest::Approx(0.4));
}

TEST_CASE("normalize splits the torus seam") {
  const auto u = IntervalUnion::normalize({{0.9, 0.2}});
  REQUIRE(u.segments().size() == 2);
  CHECK(u.segments()[0].lo == doctest::Approx(0.0));
  CHECK(u.segments()[0].hi == doctest::Approx(0.2));
  CHECK(u.segments()[1].lo == doctest::Approx(0.9));
  CHECK(u.segments()[1].hi == doctest::Approx(1.0));
  CHECK(u.measure() == doctest::Approx(0.3));
}

TEST_CASE("normalize of nothing is empty") {
  const auto u = IntervalUnion::normalize({});
  CHECK(u.empty());
  CHECK(u.measure() == 0.0);
}

TEST_CASE("normalize rejects bad endpoints") {
  CHECK_THROWS_AS(IntervalUnion::normalize({{0.1, 0.1}}), espart::InputError);
  CHECK_THROWS_AS(IntervalUnion::normalize({{0.0, std::nan("")}}), espart::InputError);
}

TEST_CASE("normalize handles negative and overlong inputs") {
  const auto wrapped = IntervalUnion::normalize({{-0.1, 0.1}});
  CHECK(wrapped.measure() == doctest::Approx(0.2));
  REQUIRE(wrapped.segments().size() == 2);
  const auto full = IntervalUnion::normalize({{0.0, 1.0}});
  CHECK(full.measure() == doctest::Approx(1.0));
}

TEST_CASE("normalize is idempotent on random input") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = oracle::random_raw_intervals(rng, rng.integer(1, 12));
    const auto once = IntervalUnion::normalize(raw);
    std::vector<std::pair<double, double>> again;
    for (const auto& s : once.segments()) again.emplace_back(s.lo, s.hi);
    const auto twice = IntervalUnion::normalize(again);
    REQUIRE(twice.segments().size() == once.segments().size());
    for (std::size_t i = 0; i < once.segments().size(); ++i) {
      CHECK(twice.segments()[i].lo == once.segments()[i].lo);
      CHECK(twice.segments()[i].hi == once.segments()[i].hi);
    }
  }
}

TEST_CASE("complement basics") {
  const auto mid = IntervalUnion::normalize({{0.25, 0.75}});
  const auto comp = mid.complement();
  REQUIRE(comp.segments().size() == 2);
  CHECK(comp.segments()[0].lo == doctest::Approx(0.0));
  CHECK(comp.segments()[0].hi == doctest::Approx(0.25));
  CHECK(comp.segments()[1].lo == doctest::Approx(0.75));
  CHECK(comp.segments()[1].hi == doctest::Approx(1.0));

  const auto whole = IntervalUnion{}.complement();
  REQUIRE(whole.segments().size() == 1);
  CHECK(whole.measure() == doctest::Approx(1.0));

  const auto edges = IntervalUnion::normalize({{0.0, 0.2}, {0.9, 1.0}});
  const auto gap = edges.complement();
  REQUIRE(gap.segments().size() == 1);
  CHECK(gap.segments()[0].lo == doctest::Approx(0.2));
  CHECK(gap.segments()[0].hi == doctest::Approx(0.9));
}

TEST_CASE("measure splits exactly between a union and its complement") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = IntervalUnion::normalize(
        oracle::random_raw_intervals(rng, rng.integer(0, 10)));
    const auto c = u.complement();
    CHECK(std::abs(u.measure() + c.measure() - 1.0) <= 1e-12);
    const auto back = c.complement();
    REQUIRE(back.segments().size() == u.segments().size());
    for (std::size_t i = 0; i < u.segments().size(); ++i) {
      CHECK(back.segments()[i].lo == doctest::Approx(u.segments()[i].lo).epsilon(1e-14));
      CHECK(back.segments()[i].hi == doctest::Approx(u.segments()[i].hi).epsilon(1e-14));
    }
  }
}

namespace {

CoverSpec quarter_powers_cover(int explicit_count) {
  // l_n = 4^{-(n+2)}: explicit head plus the matching geometric tail.
  CoverSpec c;
  for (int n = 1; n <= explicit_count; ++n) c.lengths.push_back(std::pow(4.0, -(n + 2)));
  c.tail = GeometricTail{1.0 / 16.0, 0.25, explicit_count + 1};
  c.split_z = 0;
  c.alpha = 0.5;
  return c;
}

}  // namespace

TEST_CASE("cover cost of the quarter-powers cover") {
  const auto c = quarter_powers_cover(10);
  const auto cost = espart::cover_cost(c);
  CHECK(cost.head == 0.0);
  // Oracle: direct summation of 200 terms of l_n^alpha = 2^{-(n+2)}.
  double direct = 0.0;
  for (int n = 1; n <= 200; ++n) direct += std::pow(4.0, -(n + 2) * 0.5);
  CHECK(cost.tail_alpha == doctest::Approx(direct).epsilon(1e-12));
  CHECK(cost.tail_alpha == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cost.total == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cost.admissible);
}

TEST_CASE("cover cost with a single explicit interval") {
  CoverSpec c;
  c.lengths = {0.5};
  c.split_z = 1;
  c.alpha = 0.5;
  const auto cost = espart::cover_cost(c);
  CHECK(cost.head == doctest::Approx(0.5));
  CHECK(cost.tail_alpha == 0.0);
  CHECK(cost.total == doctest::Approx(0.5));
  CHECK(cost.admissible);
}

TEST_CASE("cover cost fails for halving lengths at alpha one half") {
  // l_n = 2^{-n}: sum of l_n^(1/2) is 1/(sqrt(2)-1), far above 1.
  CoverSpec c;
  c.lengths = {0.5};
  c.tail = GeometricTail{1.0, 0.5, 2};
  c.split_z = 0;
  c.alpha = 0.5;
  const auto cost = espart::cover_cost(c);
  CHECK(cost.total == doctest::Approx(1.0 / (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
  CHECK_FALSE(cost.admissible);
}

TEST_CASE("cover cost is nonincreasing in alpha") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    CoverSpec c;
    double l = rng.in(0.2, 0.9);
    const int n = rng.integer(2, 12);
    for (int i = 0; i < n; ++i) {
      c.lengths.push_back(l);
      l *= rng.in(0.3, 1.0);
    }
    c.split_z = 0;
    const double a1 = rng.in(0.05, 0.5);
    const double a2 = rng.in(a1, 0.95);
    c.alpha = a1;
    const double t1 = espart::cover_cost(c).total;
    c.alpha = a2;
    const double t2 = espart::cover_cost(c).total;
    CHECK(t1 >= t2 - 1e-12);
  }
}

TEST_CASE("sum of lengths") {
  CHECK(espart::sum_lengths(quarter_powers_cover(8)) ==
        doctest::Approx(1.0 / 48.0).epsilon(1e-12));

  CoverSpec single;
  single.lengths = {0.5};
  CHECK(espart::sum_lengths(single) == doctest::Approx(0.5));

  // l_n = 0.4 * 2^{-n} sums to 0.4.
  CoverSpec dyadic;
  dyadic.lengths = {0.2};
  dyadic.tail = GeometricTail{0.4, 0.5, 2};
  CHECK(espart::sum_lengths(dyadic) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("realize_cover") {
  CoverSpec c;
  c.lengths = {0.2};
  c.centers = std::vector<double>{0.5};
  const auto u = espart::realize_cover(c, 1);
  REQUIRE(u.segments().size() == 1);
  CHECK(u.segments()[0].lo == doctest::Approx(0.4));
  CHECK(u.segments()[0].hi == doctest::Approx(0.6));

  CoverSpec two;
  two.lengths = {0.2, 0.1};
  two.centers = std::vector<double>{0.2, 0.7};
  CHECK(espart::realize_cover(two, 2).measure() == doctest::Approx(0.3));

  CoverSpec overlap;
  overlap.lengths = {0.2, 0.2};
  overlap.centers = std::vector<double>{0.5, 0.55};
  CHECK(espart::realize_cover(overlap, 2).measure() < 0.4);

  CoverSpec missing;
  missing.lengths = {0.2, 0.1};
  CHECK_THROWS_AS(espart::realize_cover(missing, 2), espart::InputError);
}

TEST_CASE("sum of lengths dominates every realized cover") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    CoverSpec c;
    std::vector<double> centers;
    double l = rng.in(0.05, 0.2);
    const int n = rng.integer(1, 10);
    for (int i = 0; i < n; ++i) {
      c.lengths.push_back(l);
      centers.push_back(rng.unit());
      l *= rng.in(0.4, 1.0);
    }
    c.centers = centers;
    const double total = espart::sum_lengths(c);
    for (int m = 1; m <= n; ++m) {
      CHECK(espart::realize_cover(c, m).measure() <= total + 1e-12);
    }
  }
}

TEST_CASE("cover validation rejects malformed covers") {
  CoverSpec increasing;
  increasing.lengths = {0.1, 0.2};
  CHECK_THROWS_AS(increasing.validate(), espart::InputError);

  CoverSpec huge;
  huge.lengths = {1.5};
  CHECK_THROWS_AS(huge.validate(), espart::InputError);

  CoverSpec bad_tail;
  bad_tail.lengths = {0.001};
  bad_tail.tail = GeometricTail{0.5, 0.5, 2};  // tail first term 0.125 > 0.001
  CHECK_THROWS_AS(bad_tail.validate(), espart::InputError);

  CoverSpec misaligned;
  misaligned.lengths = {0.5};
  misaligned.tail = GeometricTail{0.5, 0.5, 5};
  CHECK_THROWS_AS(misaligned.validate(), espart::InputError);
}
