#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "espart/partition.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using espart::CoverSpec;
using espart::PartitionCertificate;

TEST_CASE("epsilon choice and its room conditions") {
  CHECK(espart::choose_epsilon(0.0) == doctest::Approx(0.125));
  CHECK(espart::choose_epsilon(0.5) == doctest::Approx(0.0625));
  // Substituting back: 3/4 + F/4 < 1 - eps and F + 2 eps < (1 + F)/2.
  for (double f : {0.0, 0.5, 0.9}) {
    const double eps = espart::choose_epsilon(f);
    CHECK(0.75 + f / 4.0 < 1.0 - eps);
    CHECK(f + 2.0 * eps < (1.0 + f) / 2.0);
  }
  CHECK_THROWS_AS(espart::choose_epsilon(1.0), espart::HypothesisError);
  CHECK(espart::choose_epsilon(1.0 - 1e-9) < 1e-6);  // degenerate regime
}

namespace {

// Brute-force oracle for the cutoff: scan every m and test the three
// conditions directly from partial sums.
int cutoff_scan(const CoverSpec& c, double eps, double r, int limit) {
  for (int m = std::max(1, c.split_z); m <= limit; ++m) {
    const double l = c.length_at(m);
    if (l <= 0.0) break;
    const double tail = c.alpha_sum_after(m);
    const double lp = std::pow(l, 1.0 - c.alpha);
    const bool c1 = tail > 0.0 ? lp < 1.0 / (4.0 * tail) : true;
    const bool c2 = 4.0 * (lp + eps) * tail < eps;
    const bool c3 = 1.0 / l > r;
    if (c1 && c2 && c3) return m;
  }
  return -1;
}

}  // namespace

TEST_CASE("cutoff choice on the quarter-powers cover") {
  const auto c = fixtures::quarter_powers_cover();
  CHECK(espart::choose_cutoff(c, 0.1, 10.0) == 2);
  CHECK(espart::choose_cutoff(c, 0.1, 10.0) == cutoff_scan(c, 0.1, 10.0, 50));
  // Brute-force agreement across a parameter sweep.
  for (double eps : {0.02, 0.05, 0.3}) {
    for (double r : {1.0, 100.0, 5000.0}) {
      CHECK(espart::choose_cutoff(c, eps, r) == cutoff_scan(c, eps, r, 400));
    }
  }
}

TEST_CASE("cutoff on a one-interval cover") {
  CoverSpec c;
  c.lengths = {0.25};
  c.split_z = 1;
  c.alpha = 0.5;
  CHECK(espart::choose_cutoff(c, 0.1, 3.0) == 1);
}

TEST_CASE("cutoff failure names the scale condition") {
  CoverSpec c;
  c.lengths = {0.25, 0.2};
  c.alpha = 0.5;
  try {
    espart::choose_cutoff(c, 0.1, 1e12);
    FAIL("expected a hypothesis error");
  } catch (const espart::HypothesisError& e) {
    CHECK(std::string(e.what()).find("cutoff_scale") != std::string::npos);
  }
}

TEST_CASE("separation choice") {
  CHECK(espart::choose_separation(2, 0.0625) == 33);
  CHECK(espart::choose_separation(1, 0.5) == 3);
  CHECK(espart::choose_separation(1, 2.0) == 2);  // floored at 2
}

TEST_CASE("extraction on the end-to-end instance") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  const PartitionCertificate cert = espart::extract(cover, window);

  // Frozen deterministic constants of this instance.
  CHECK(cert.f_bar == doctest::Approx(1.0 / 48.0).epsilon(1e-12));
  CHECK(cert.epsilon == doctest::Approx((1.0 - 1.0 / 48.0) / 8.0).epsilon(1e-12));
  CHECK(cert.r_scale == doctest::Approx(1.0));
  CHECK(cert.j_modulus == 3);
  CHECK(cert.m_cutoff == 2);
  CHECK(cert.k_separation == 17);
  CHECK(cert.l_star == 4);
  CHECK(cert.n_modulus == 5);  // bumped past max(J, L*) by the direct gap check
  CHECK(cert.all_pass());
  CHECK(cert.predicted_lower_riesz == doctest::Approx((1.0 - 1.0 / 48.0) / 4.0));
  CHECK(cert.predicted_upper_riesz == doctest::Approx(1.0 + 1.0 / 17.0));
  CHECK(cert.dim_plus_estimate < 0.5);

  // Certificate soundness: re-evaluating every stored check from the stored
  // constants reproduces the same pass flags.
  const auto again = espart::reevaluate_checks(cert, cover);
  for (const auto& chk : again) {
    const auto* stored = cert.find_check(chk.name);
    REQUIRE(stored != nullptr);
    CHECK(stored->pass == chk.pass);
    CHECK(stored->lhs == chk.lhs);
    CHECK(stored->rhs == chk.rhs);
  }
}

TEST_CASE("extraction is deterministic") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  const auto a = espart::extract(cover, window);
  const auto b = espart::extract(cover, window);
  CHECK(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].lhs == b.checks[i].lhs);
    CHECK(a.checks[i].rhs == b.checks[i].rhs);
  }
}

TEST_CASE("shrinking the cover never breaks a passing extraction") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  for (double tau : {0.9, 0.5, 0.25, 0.1}) {
    const auto cert = espart::extract(cover.scaled(tau), window);
    CHECK(cert.all_pass());
  }
}

TEST_CASE("inadmissible cover fails with the cover-cost condition") {
  CoverSpec c;
  c.lengths = {0.5};
  c.tail = espart::GeometricTail{1.0, 0.5, 2};
  c.split_z = 0;
  c.alpha = 0.5;
  try {
    espart::extract(c, fixtures::cube_window());
    FAIL("expected a hypothesis error");
  } catch (const espart::HypothesisError& e) {
    CHECK(std::string(e.what()).find("cover cost") != std::string::npos);
  }
}

TEST_CASE("integers fail the dimension hypothesis at alpha one half") {
  try {
    espart::extract(fixtures::quarter_powers_cover(), fixtures::integer_window(-500, 500));
    FAIL("expected a hypothesis error");
  } catch (const espart::HypothesisError& e) {
    const std::string what = e.what();
    CHECK(what.find("dimension") != std::string::npos);
  }
}

TEST_CASE("validation of the end-to-end instance") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  const auto cert = espart::extract(cover, window);
  const auto e = espart::realize_cover(cover, cover.explicit_count());
  const auto rep = espart::validate(cert, cover, e, window, {1, 8, 16, 32});

  CHECK(rep.pass);
  CHECK(rep.failures.empty());
  CHECK(rep.min_subsample_separation > cert.k_separation);
  CHECK(rep.worst_margin_lower > 0.0);
  CHECK(rep.worst_margin_upper > 0.0);
  CHECK(rep.target_lower == doctest::Approx((1.0 - 1.0 / 48.0) / 4.0));

  // Size-1 sections: lambda_min is exactly the complement measure.
  for (const auto& entry : rep.entries) {
    if (entry.effective_size == 1) {
      CHECK(entry.lambda_min == doctest::Approx(e.complement().measure()).epsilon(1e-12));
    }
  }

  // Margins are monotone in the section size (nested blocks interlace).
  for (int j = 1; j <= cert.n_modulus; ++j) {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& entry : rep.entries) {
      if (entry.subsample_class != j) continue;
      CHECK(entry.lambda_min <= prev + 1e-10);
      prev = entry.lambda_min;
    }
  }
}

TEST_CASE("fault injection: halving K breaks the separation budget") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  auto cert = espart::extract(cover, window);
  cert.k_separation /= 2;
  const auto e = espart::realize_cover(cover, cover.explicit_count());
  const auto rep = espart::validate(cert, cover, e, window, {8});
  CHECK_FALSE(rep.pass);
  bool named = false;
  for (const auto& f : rep.failures) {
    if (f.find("separation_ratio") != std::string::npos) named = true;
  }
  CHECK(named);
}

TEST_CASE("fault injection: a set outside the cover is rejected") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto window = fixtures::cube_window();
  const auto cert = espart::extract(cover, window);
  const auto stray = espart::IntervalUnion::normalize({{0.4, 0.45}});
  CHECK_THROWS_AS(espart::validate(cert, cover, stray, window, {8}), espart::InputError);
}
