// Command-line surface for the partition pipeline: every stage is exposed as
// a subcommand with machine-readable JSON output so desk-scale experiments
// are reproducible from shell scripts.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "espart/bounds.hpp"
#include "espart/constructions.hpp"
#include "espart/gram.hpp"
#include "espart/io.hpp"
#include "espart/partition.hpp"
#include "espart/pointset.hpp"

namespace {

using espart::io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitValidation = 4;
constexpr int kExitNotFound = 5;

struct Emitter {
  std::string command;
  std::string out_path;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void emit(const ordered_json& inputs, const ordered_json& outputs) const {
    ordered_json report;
    report["command"] = command;
    report["version"] = std::string(espart::kVersion);
    report["inputs"] = inputs;
    report["outputs"] = outputs;
    report["timing_ms"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count());
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      espart::io::write_text_file(out_path, text);
    }
  }
};

std::vector<double> parse_number_list(const std::string& csv) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw espart::InputError("cannot parse number '" + token + "'");
    }
  }
  return out;
}

std::vector<std::complex<double>> parse_coefficients(const std::string& spec, std::size_t n) {
  if (spec.empty()) {
    return std::vector<std::complex<double>>(n, {1.0, 0.0});
  }
  ordered_json j;
  if (!spec.empty() && spec.front() == '[') {
    j = ordered_json::parse(spec, nullptr, true);
  } else {
    j = espart::io::read_json_file(spec);
    if (j.contains("coeffs")) j = j["coeffs"];
  }
  std::vector<std::complex<double>> coeffs;
  for (const auto& item : j) {
    if (item.is_number()) {
      coeffs.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2) {
      coeffs.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw espart::InputError("coefficients must be numbers or [re, im] pairs");
    }
  }
  if (coeffs.size() != n) {
    throw espart::InputError("coefficient count does not match the frequency count");
  }
  return coeffs;
}

std::vector<double> geometric_grid(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo) || steps < 2) {
    throw espart::InputError("scale grid needs 0 < h_min < h_max and at least 2 steps");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  const double step = (std::log(hi) - std::log(lo)) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid.push_back(std::exp(std::log(lo) + i * step));
  return grid;
}

int cmd_density(const std::string& pointset_path, double r, double h_min, double h_max,
                int h_steps, Emitter& emitter) {
  const espart::PointSetWindow w = espart::io::load_point_window(pointset_path);
  const double hi = h_max > 0.0 ? h_max : std::max(w.span() / 2.0, h_min * 2.0);
  const auto grid = geometric_grid(h_min, hi, h_steps);
  const espart::DensityReport rep = espart::density_estimate(w, r, grid);
  ordered_json inputs;
  inputs["pointset"] = pointset_path;
  inputs["r"] = r;
  inputs["h_min"] = h_min;
  inputs["h_max"] = hi;
  inputs["h_steps"] = h_steps;
  inputs["points"] = w.size();
  emitter.emit(inputs, espart::io::density_report_json(rep, w));
  return kExitOk;
}

int cmd_partition(const std::string& cover_path, const std::string& pointset_path,
                  std::optional<double> alpha, bool run_validate,
                  const std::string& window_sizes_csv, Emitter& emitter) {
  espart::CoverSpec cover = espart::io::load_cover(cover_path);
  if (alpha) cover.alpha = *alpha;
  const espart::PointSetWindow w = espart::io::load_point_window(pointset_path);

  const espart::PartitionCertificate cert = espart::extract(cover, w);
  ordered_json inputs;
  inputs["cover"] = cover_path;
  inputs["pointset"] = pointset_path;
  inputs["alpha"] = cover.alpha;
  inputs["validate"] = run_validate;
  inputs["points"] = w.size();

  ordered_json outputs;
  outputs["certificate"] = espart::io::certificate_json(cert);

  bool ok = cert.all_pass();
  if (run_validate) {
    std::vector<int> sizes;
    for (double v : parse_number_list(window_sizes_csv)) sizes.push_back(static_cast<int>(v));
    inputs["window_sizes"] = sizes;
    const espart::IntervalUnion e = espart::realize_cover(cover, cover.explicit_count());
    const espart::ValidationReport rep = espart::validate(cert, cover, e, w, sizes);
    outputs["validation"] = espart::io::validation_report_json(rep);
    if (!rep.pass) {
      emitter.emit(inputs, outputs);
      return kExitValidation;
    }
  }
  emitter.emit(inputs, outputs);
  return ok ? kExitOk : kExitValidation;
}

int cmd_gram(const std::string& set_path, const std::string& pointset_path,
             bool complement_mode, double target_lower, bool dump_matrix,
             Emitter& emitter) {
  const espart::IntervalUnion e = espart::io::load_interval_union(set_path);
  const espart::PointSetWindow w = espart::io::load_point_window(pointset_path);
  const espart::RieszMarginReport rep =
      espart::riesz_margin(complement_mode, e, w.points(), target_lower);

  ordered_json inputs;
  inputs["set"] = set_path;
  inputs["pointset"] = pointset_path;
  inputs["complement"] = complement_mode;
  inputs["target_lower"] = target_lower;

  const espart::GramSection section =
      dump_matrix ? espart::gram_matrix(complement_mode ? e.complement() : e, w.points())
                  : espart::GramSection{};
  emitter.emit(inputs, espart::io::gram_report_json(rep, w.points(),
                                                    dump_matrix ? &section : nullptr));
  return rep.pass ? kExitOk : kExitValidation;
}

int cmd_mv(const std::string& pointset_path, const std::string& coeffs_spec,
           const std::string& interval_csv, std::optional<double> declared_delta,
           int suite, unsigned long long seed, Emitter& emitter) {
  ordered_json inputs;
  inputs["pointset"] = pointset_path;
  inputs["interval"] = interval_csv;
  inputs["suite"] = suite;

  if (suite > 0) {
    // Seeded random suite: separated frequencies, complex coefficients,
    // random interval placement. Reports how many draws satisfied the
    // two-sided bound.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int held = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < suite; ++i) {
      const int n = 2 + static_cast<int>(unit(rng) * 18);
      const double delta = 0.1 + unit(rng) * 9.9;
      std::vector<double> freqs;
      double f = -5.0 + unit(rng) * 10.0;
      for (int k = 0; k < n; ++k) {
        freqs.push_back(f);
        f += delta * (1.0 + 3.0 * unit(rng));
      }
      std::vector<std::complex<double>> coeffs;
      for (int k = 0; k < n; ++k) {
        coeffs.emplace_back(unit(rng) * 2.0 - 1.0, unit(rng) * 2.0 - 1.0);
      }
      const double t = 0.1 + unit(rng) * 1.9;
      const double lo = unit(rng) * 10.0 - 5.0;
      const espart::TrigPolynomial p(std::move(freqs), std::move(coeffs));
      const espart::MvReport rep = espart::mv_check(p, {lo, lo + t});
      if (rep.holds) ++held;
      worst_slack = std::min({worst_slack, rep.energy - rep.lower, rep.upper - rep.energy});
    }
    ordered_json outputs;
    outputs["instances"] = suite;
    outputs["held"] = held;
    outputs["worst_slack"] = worst_slack;
    inputs["seed"] = seed;
    emitter.emit(inputs, outputs);
    return held == suite ? kExitOk : kExitValidation;
  }

  const espart::PointSetWindow w = espart::io::load_point_window(pointset_path);
  const auto interval = parse_number_list(interval_csv);
  if (interval.size() != 2) throw espart::InputError("--interval expects \"a,b\"");
  const espart::TrigPolynomial p(
      w.points(), parse_coefficients(coeffs_spec, static_cast<std::size_t>(w.size())));
  const espart::MvReport rep =
      espart::mv_check(p, {interval[0], interval[1]}, declared_delta);
  emitter.emit(inputs, espart::io::mv_report_json(rep));
  return rep.holds ? kExitOk : kExitValidation;
}

int cmd_gen(const std::string& example, int n_max, const std::string& rule_name,
            double rule_sum, double beta, int j_max, const std::string& schedule,
            Emitter& emitter) {
  ordered_json inputs;
  inputs["example"] = example;
  if (example == "hkw") {
    espart::HkwRule rule;
    if (rule_name == "dyadic") {
      rule.kind = espart::HkwRule::Kind::dyadic;
    } else if (rule_name == "inverse-square") {
      rule.kind = espart::HkwRule::Kind::inverse_square;
      rule.sum = rule_sum;
    } else {
      throw espart::InputError("unknown length rule: " + rule_name);
    }
    inputs["n_max"] = n_max;
    inputs["rule"] = rule_name;
    const espart::CoverSpec cover = espart::hkw_cover(n_max, rule);
    emitter.emit(inputs, espart::io::cover_json(cover));
    return kExitOk;
  }
  if (example == "easycor") {
    espart::EasycorParams params;
    params.beta = beta;
    params.j_max = j_max;
    params.schedule = schedule == "paper" ? espart::EasycorParams::Schedule::paper
                                          : espart::EasycorParams::Schedule::desk;
    inputs["beta"] = beta;
    inputs["j_max"] = j_max;
    inputs["schedule"] = schedule;
    const espart::EasycorWindow win = espart::easycor_lambda(params);
    emitter.emit(inputs, espart::io::easycor_json(win));
    return kExitOk;
  }
  throw espart::InputError("unknown example: " + example);
}

int cmd_progression(const std::string& pointset_path, int n_sub, double delta,
                    long long budget, Emitter& emitter) {
  const espart::PointSetWindow w = espart::io::load_point_window(pointset_path);
  const espart::ProgressionSearch search = espart::progression_check(w, n_sub, delta, budget);
  ordered_json inputs;
  inputs["pointset"] = pointset_path;
  inputs["subsample_n"] = n_sub;
  inputs["delta"] = delta;
  inputs["budget"] = budget;
  emitter.emit(inputs, espart::io::progression_json(search, n_sub, delta));
  return search.found ? kExitOk : kExitNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform partition of exponential systems into Riesz sequences"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  app.add_option("--out", out_path, "Write the report to a file instead of stdout");

  // density
  auto* density = app.add_subcommand("density", "Window density curves of a point set");
  std::string density_points;
  double density_r = 1.0, density_hmin = 1.0, density_hmax = 0.0;
  int density_steps = 32;
  density->add_option("pointset", density_points)->required();
  density->add_option("--r", density_r, "Density exponent");
  density->add_option("--h-min", density_hmin);
  density->add_option("--h-max", density_hmax, "Defaults to span/2");
  density->add_option("--h-steps", density_steps);

  // partition
  auto* partition = app.add_subcommand("partition", "Extract and certify a partition modulus");
  std::string part_cover, part_points, part_sizes = "1,8,16,32";
  double part_alpha = -1.0;
  bool part_validate = false;
  partition->add_option("cover", part_cover)->required();
  partition->add_option("pointset", part_points)->required();
  partition->add_option("--alpha", part_alpha, "Override the cover's alpha");
  partition->add_flag("--validate", part_validate, "Run the eigenvalue validation");
  partition->add_option("--window-sizes", part_sizes, "Comma-separated section sizes");

  // gram
  auto* gram = app.add_subcommand("gram", "Gram section margin of a restricted system");
  std::string gram_set, gram_points;
  bool gram_complement = false, gram_dump = false;
  double gram_target = 0.0;
  gram->add_option("set", gram_set)->required();
  gram->add_option("pointset", gram_points)->required();
  gram->add_flag("--complement", gram_complement, "Assemble on the complement of the set");
  gram->add_option("--target-lower", gram_target);
  gram->add_flag("--dump-matrix", gram_dump);

  // mv
  auto* mv = app.add_subcommand("mv", "Two-sided energy bounds for a separated system");
  std::string mv_points, mv_coeffs, mv_interval = "0,1";
  double mv_delta = -1.0;
  int mv_suite = 0;
  unsigned long long mv_seed = 1;
  mv->add_option("pointset", mv_points);
  mv->add_option("--coeffs", mv_coeffs, "Inline JSON array or a file; default all ones");
  mv->add_option("--interval", mv_interval, "a,b");
  mv->add_option("--delta", mv_delta, "Declared separation (required for one frequency)");
  mv->add_option("--suite", mv_suite, "Run a seeded random suite of this size");
  mv->add_option("--seed", mv_seed);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate example covers and point sets");
  std::string gen_example, gen_rule = "dyadic", gen_schedule = "desk";
  int gen_nmax = 12, gen_jmax = 24;
  double gen_sum = 0.5, gen_beta = 0.8;
  gen->add_option("--example", gen_example, "hkw or easycor")->required();
  gen->add_option("--n-max", gen_nmax);
  gen->add_option("--rule", gen_rule, "dyadic or inverse-square");
  gen->add_option("--sum", gen_sum, "Total length for the inverse-square rule");
  gen->add_option("--beta", gen_beta);
  gen->add_option("--j-max", gen_jmax);
  gen->add_option("--schedule", gen_schedule, "desk or paper");

  // progression
  auto* progression = app.add_subcommand("progression", "Search a subsample for a qualifying progression");
  std::string prog_points;
  int prog_n = 1;
  double prog_delta = 1.0;
  long long prog_budget = 1'000'000;
  progression->add_option("pointset", prog_points)->required();
  progression->add_option("--subsample-N", prog_n)->required();
  progression->add_option("--delta", prog_delta)->required();
  progression->add_option("--budget", prog_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  Emitter emitter;
  emitter.out_path = out_path;
  try {
    if (density->parsed()) {
      emitter.command = "density";
      return cmd_density(density_points, density_r, density_hmin, density_hmax,
                         density_steps, emitter);
    }
    if (partition->parsed()) {
      emitter.command = "partition";
      return cmd_partition(part_cover, part_points,
                           part_alpha > 0.0 ? std::optional<double>(part_alpha)
                                            : std::nullopt,
                           part_validate, part_sizes, emitter);
    }
    if (gram->parsed()) {
      emitter.command = "gram";
      return cmd_gram(gram_set, gram_points, gram_complement, gram_target, gram_dump,
                      emitter);
    }
    if (mv->parsed()) {
      emitter.command = "mv";
      return cmd_mv(mv_points, mv_coeffs, mv_interval,
                    mv_delta > 0.0 ? std::optional<double>(mv_delta) : std::nullopt,
                    mv_suite, mv_seed, emitter);
    }
    if (gen->parsed()) {
      emitter.command = "gen";
      return cmd_gen(gen_example, gen_nmax, gen_rule, gen_sum, gen_beta, gen_jmax,
                     gen_schedule, emitter);
    }
    if (progression->parsed()) {
      emitter.command = "progression";
      return cmd_progression(prog_points, prog_n, prog_delta, prog_budget, emitter);
    }
  } catch (const espart::HypothesisError& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const espart::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
