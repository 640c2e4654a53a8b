#include "espart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>

#include "espart/gram.hpp"

namespace espart {

namespace {

CheckRecord make_check(std::string name, double lhs, double rhs, bool strict = true) {
  CheckRecord c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.strict = strict;
  c.pass = strict ? lhs < rhs : lhs <= rhs;
  c.slack = rhs - lhs;
  return c;
}

std::vector<double> default_dim_grid(const PointSetWindow& w) {
  const double hi = w.span() / 2.0;
  if (!(hi > 1.0)) {
    throw HypothesisError("window span too small for a dimension estimate");
  }
  constexpr int kScales = 48;
  std::vector<double> grid;
  grid.reserve(kScales);
  const double step = std::log(hi) / (kScales - 1);
  for (int i = 0; i < kScales; ++i) grid.push_back(std::exp(i * step));
  return grid;
}

// Minimum consecutive gap over all residue classes of the window.
double min_subsample_gap(const PointSetWindow& w, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= n; ++j) {
    const PointSetWindow sub = subsample(w, n, j);
    if (sub.size() >= 2) best = std::min(best, separation(sub));
  }
  return best;
}

}  // namespace

bool PartitionCertificate::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* PartitionCertificate::find_check(const std::string& name) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double choose_epsilon(double f_bar) {
  if (!(f_bar >= 0.0) || !(f_bar < 1.0)) {
    std::ostringstream msg;
    msg << "cover length sum " << f_bar << " leaves no room in the torus (needs < 1)";
    throw HypothesisError(msg.str());
  }
  return (1.0 - f_bar) / 8.0;
}

int choose_cutoff(const CoverSpec& c, double eps, double r) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  const int lo = std::max(c.split_z, 1);
  // A geometric tail always satisfies all three conditions eventually; the
  // cap only guards against pathological inputs.
  const int hi = c.is_finite() ? c.explicit_count() : c.explicit_count() + 600;
  const char* first_unmet = nullptr;
  double lhs = 0.0, rhs = 0.0;
  for (int m = lo; m <= hi; ++m) {
    const double l_m = c.length_at(m);
    if (l_m <= 0.0) break;
    const double tail = c.alpha_sum_after(m);
    const double l_pow = std::pow(l_m, 1.0 - c.alpha);
    const double cond1_rhs =
        tail > 0.0 ? 1.0 / (4.0 * tail) : std::numeric_limits<double>::infinity();
    if (!(l_pow < cond1_rhs)) {
      first_unmet = "cutoff_tail_product", lhs = l_pow, rhs = cond1_rhs;
      continue;
    }
    if (!(4.0 * (l_pow + eps) * tail < eps)) {
      first_unmet = "cutoff_tail_epsilon", lhs = 4.0 * (l_pow + eps) * tail, rhs = eps;
      continue;
    }
    if (!(1.0 / l_m > r)) {
      first_unmet = "cutoff_scale", lhs = r, rhs = 1.0 / l_m;
      continue;
    }
    return m;
  }
  std::ostringstream msg;
  msg << "no cutoff satisfies the cover conditions";
  if (first_unmet) {
    msg << " (last unmet: " << first_unmet << ", lhs " << lhs << " vs rhs " << rhs << ")";
  }
  throw HypothesisError(msg.str());
}

int choose_separation(int m, double eps) {
  if (m < 1) throw InputError("cutoff must be at least 1");
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  const int k = static_cast<int>(std::floor(m / eps)) + 1;
  return std::max(2, k);
}

namespace {

// The arithmetic checks shared by extract and the certificate re-evaluation:
// everything derivable from (f_bar, alpha, eps, M, K, R) and the cover.
std::vector<CheckRecord> arithmetic_checks(double f_bar, double alpha, double eps,
                                           int m, int k, double r, const CoverSpec& c) {
  std::vector<CheckRecord> checks;
  const double l_m = c.length_at(m);
  const double tail = c.alpha_sum_after(m);
  const double l_pow = std::pow(l_m, 1.0 - alpha);

  checks.push_back(make_check("epsilon_room_lower", 0.75 + f_bar / 4.0, 1.0 - eps));
  checks.push_back(make_check("epsilon_room_upper", f_bar + 2.0 * eps, (1.0 + f_bar) / 2.0));
  checks.push_back(make_check(
      "cutoff_tail_product", l_pow,
      tail > 0.0 ? 1.0 / (4.0 * tail) : std::numeric_limits<double>::infinity()));
  checks.push_back(make_check("cutoff_tail_epsilon", 4.0 * (l_pow + eps) * tail, eps));
  checks.push_back(make_check("cutoff_scale", r, 1.0 / l_m));
  checks.push_back(make_check("separation_ratio", static_cast<double>(m) / k, eps));
  checks.push_back(make_check("inverse_separation", 1.0 / k, eps));
  checks.push_back(make_check("final_chain_constant", (3.0 + f_bar) / 4.0,
                              1.0 - 1.0 / k, /*strict=*/false));
  checks.push_back(make_check("head_energy_budget",
                              c.head_sum(m) + static_cast<double>(m) / k, f_bar + eps,
                              /*strict=*/false));
  checks.push_back(make_check("tail_energy_budget",
                              2.0 * tail * (2.0 * l_pow + eps), eps,
                              /*strict=*/false));
  return checks;
}

}  // namespace

PartitionCertificate extract(const CoverSpec& c, const PointSetWindow& w,
                             const ExtractOptions& opts) {
  c.validate();
  PartitionCertificate cert;
  cert.alpha = c.alpha;
  cert.beta = 1.0 - c.alpha;
  cert.window_only = !w.certified();

  const CoverCost cost = cover_cost(c);
  cert.checks.push_back(make_check("cover_cost", cost.total, 1.0));
  if (!cost.admissible) {
    std::ostringstream msg;
    msg << "cover cost condition failed: head " << cost.head << " + tail_alpha "
        << cost.tail_alpha << " = " << cost.total << " >= 1";
    throw HypothesisError(msg.str());
  }

  // Plain length sum: an upper bound for the measure of the union, below 1
  // whenever the cover cost is (lengths <= 1 give l <= l^alpha).
  cert.f_bar = sum_lengths(c);

  const std::vector<double> grid =
      opts.dim_h_grid.empty() ? default_dim_grid(w) : opts.dim_h_grid;
  const DimEstimate dim = dim_estimate(w, grid);
  cert.dim_plus_estimate = dim.dim_plus;
  cert.checks.push_back(make_check("dim_plus_hypothesis", dim.dim_plus, cert.beta));
  if (!(dim.dim_plus < cert.beta)) {
    std::ostringstream msg;
    msg << "upper dimension hypothesis failed: dim+ estimate " << dim.dim_plus
        << " >= 1 - alpha = " << cert.beta;
    throw HypothesisError(msg.str());
  }

  cert.epsilon = choose_epsilon(cert.f_bar);
  cert.epsilon_degenerate = cert.epsilon < 1e-6;

  const DensityScale scale = choose_density_scale(w, cert.beta, cert.epsilon);
  cert.r_scale = scale.scale;
  cert.j_modulus = scale.sup_count;

  cert.m_cutoff = choose_cutoff(c, cert.epsilon, cert.r_scale);
  cert.k_separation = choose_separation(cert.m_cutoff, cert.epsilon);
  cert.l_star = max_index_spread(w, cert.k_separation);

  // Start at max(J, L*) and raise until every residue class is separated
  // beyond K on the window; index spreads above L* force that, so at most
  // one extra step beyond L* is ever needed.
  cert.n_modulus = std::max(cert.j_modulus, cert.l_star);
  cert.n_modulus = std::max(cert.n_modulus, 1);
  double gap = min_subsample_gap(w, cert.n_modulus);
  while (gap <= cert.k_separation && cert.n_modulus <= cert.l_star) {
    ++cert.n_modulus;
    gap = min_subsample_gap(w, cert.n_modulus);
  }

  auto arith = arithmetic_checks(cert.f_bar, cert.alpha, cert.epsilon, cert.m_cutoff,
                                 cert.k_separation, cert.r_scale, c);
  cert.checks.insert(cert.checks.end(), arith.begin(), arith.end());
  cert.checks.push_back(make_check("subsample_separation",
                                   static_cast<double>(cert.k_separation), gap));

  cert.predicted_lower_riesz = (1.0 - cert.f_bar) / 4.0;
  cert.predicted_upper_riesz = 1.0 + 1.0 / cert.k_separation;
  return cert;
}

std::vector<CheckRecord> reevaluate_checks(const PartitionCertificate& cert,
                                           const CoverSpec& c) {
  c.validate();
  std::vector<CheckRecord> checks;
  const CoverCost cost = cover_cost(c);
  checks.push_back(make_check("cover_cost", cost.total, 1.0));
  auto arith = arithmetic_checks(cert.f_bar, cert.alpha, cert.epsilon, cert.m_cutoff,
                                 cert.k_separation, cert.r_scale, c);
  checks.insert(checks.end(), arith.begin(), arith.end());
  return checks;
}

ValidationReport validate(const PartitionCertificate& cert, const CoverSpec& c,
                          const IntervalUnion& e, const PointSetWindow& w,
                          const std::vector<int>& window_sizes, double upper_tol) {
  c.validate();
  if (window_sizes.empty()) throw InputError("validation needs at least one window size");
  for (int m : window_sizes) {
    if (m < 1) throw InputError("window sizes must be positive");
  }

  ValidationReport rep;
  rep.target_lower = (1.0 - cert.f_bar) / 4.0;
  rep.upper_limit = 1.0 + 1.0 / cert.k_separation + upper_tol;
  rep.worst_margin_lower = std::numeric_limits<double>::infinity();
  rep.worst_margin_upper = std::numeric_limits<double>::infinity();
  rep.min_subsample_separation = std::numeric_limits<double>::infinity();
  rep.pass = true;

  // Structural invariants of the certificate.
  if (cert.n_modulus < std::max(cert.j_modulus, cert.l_star) || cert.k_separation < 2 ||
      cert.m_cutoff < c.split_z ||
      !(cert.epsilon > 0.0 && cert.epsilon < (1.0 - cert.f_bar) / 4.0)) {
    rep.pass = false;
    rep.failures.push_back("certificate constants violate structural invariants");
  }

  // Re-run every arithmetic check from the stored constants; a tampered or
  // stale certificate fails here before any eigenvalue work.
  for (const CheckRecord& chk : reevaluate_checks(cert, c)) {
    if (!chk.pass) {
      std::ostringstream msg;
      msg << "stored check '" << chk.name << "' fails on re-evaluation (lhs " << chk.lhs
          << " vs rhs " << chk.rhs << ")";
      rep.failures.push_back(msg.str());
      rep.pass = false;
    }
  }

  if (c.centers) {
    const IntervalUnion realized = realize_cover(c, c.explicit_count());
    if (!realized.contains_almost(e, 1e-9)) {
      throw InputError("the set is not contained in the realized cover");
    }
  }

  const IntervalUnion complement = e.complement();
  const int n = cert.n_modulus;
  const int max_requested = *std::max_element(window_sizes.begin(), window_sizes.end());

  for (int j = 1; j <= n; ++j) {
    const PointSetWindow sub = subsample(w, n, j);
    if (sub.size() >= 2) {
      const double sep = separation(sub);
      rep.min_subsample_separation = std::min(rep.min_subsample_separation, sep);
      if (!(sep > cert.k_separation)) {
        std::ostringstream msg;
        msg << "(j=" << j << ") subsample separation " << sep << " <= K = "
            << cert.k_separation;
        rep.failures.push_back(msg.str());
        rep.pass = false;
      }
    }
    if (sub.empty()) continue;

    // Nested blocks: one anchor per class so margins are monotone in size.
    const int anchor = std::max(0, (sub.size() - std::min(max_requested, sub.size())) / 2);
    for (int requested : window_sizes) {
      const int effective = std::min(requested, sub.size() - anchor);
      if (effective < 1) continue;
      std::span<const double> block(sub.points().data() + anchor,
                                    static_cast<std::size_t>(effective));
      GramSection g = gram_matrix(complement, block);
      extremal_eigs(g);

      ValidationEntry entry;
      entry.subsample_class = j;
      entry.window_size = requested;
      entry.effective_size = effective;
      entry.lambda_min = g.lambda_min;
      entry.lambda_max = g.lambda_max;
      entry.margin_lower = g.lambda_min - rep.target_lower;
      entry.margin_upper = rep.upper_limit - g.lambda_max;
      entry.pass = entry.margin_lower > 0.0 && entry.margin_upper > 0.0;
      rep.worst_margin_lower = std::min(rep.worst_margin_lower, entry.margin_lower);
      rep.worst_margin_upper = std::min(rep.worst_margin_upper, entry.margin_upper);
      if (!entry.pass) {
        std::ostringstream msg;
        msg << "(j=" << j << ", m=" << requested << ") lambda_min " << g.lambda_min
            << " vs target " << rep.target_lower << ", lambda_max " << g.lambda_max
            << " vs limit " << rep.upper_limit;
        rep.failures.push_back(msg.str());
        rep.pass = false;
      }
      rep.entries.push_back(entry);
    }
  }
  if (!std::isfinite(rep.min_subsample_separation)) rep.min_subsample_separation = 0.0;
  return rep;
}

}  // namespace espart
