#include "espart/io.hpp"

#include <fstream>
#include <sstream>

namespace espart::io {

namespace {

ordered_json parse_json(const std::string& text, const std::string& path) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError("failed to parse " + path + ": " + ex.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ordered_json read_json_file(const std::string& path) {
  return parse_json(slurp(path), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

IntervalUnion load_interval_union(const std::string& path) {
  const ordered_json j = read_json_file(path);
  if (!j.contains("intervals") || !j["intervals"].is_array()) {
    throw InputError(path + ": expected an \"intervals\" array");
  }
  std::vector<std::pair<double, double>> raw;
  for (const auto& pair : j["intervals"]) {
    if (!pair.is_array() || pair.size() != 2) {
      throw InputError(path + ": intervals must be [a, b] pairs");
    }
    raw.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return IntervalUnion::normalize(raw);
}

ordered_json interval_union_json(const IntervalUnion& u) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const Segment& s : u.segments()) arr.push_back({s.lo, s.hi});
  j["intervals"] = std::move(arr);
  j["measure"] = u.measure();
  return j;
}

CoverSpec cover_from_json(const ordered_json& j) {
  CoverSpec c;
  if (j.contains("lengths")) c.lengths = j["lengths"].get<std::vector<double>>();
  if (j.contains("tail") && !j["tail"].is_null()) {
    const auto& t = j["tail"];
    if (t.value("kind", std::string{}) != "geometric") {
      throw InputError("only geometric tails are supported");
    }
    c.tail = GeometricTail{t.at("c").get<double>(), t.at("rho").get<double>(),
                           t.at("from_n").get<int>()};
  }
  if (j.contains("centers") && !j["centers"].is_null()) {
    c.centers = j["centers"].get<std::vector<double>>();
  }
  c.split_z = j.value("Z", 0);
  c.alpha = j.value("alpha", 0.5);
  c.validate();
  return c;
}

CoverSpec load_cover(const std::string& path) {
  return cover_from_json(read_json_file(path));
}

ordered_json cover_json(const CoverSpec& c) {
  ordered_json j;
  j["lengths"] = c.lengths;
  if (c.tail) {
    j["tail"] = {{"kind", "geometric"},
                 {"c", c.tail->c},
                 {"rho", c.tail->rho},
                 {"from_n", c.tail->from_n}};
  } else {
    j["tail"] = nullptr;
  }
  if (c.centers) {
    j["centers"] = *c.centers;
  } else {
    j["centers"] = nullptr;
  }
  j["Z"] = c.split_z;
  j["alpha"] = c.alpha;
  return j;
}

PointSetWindow point_window_from_json(const ordered_json& j) {
  if (j.contains("kind")) {
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "easycor") {
      EasycorParams params;
      params.beta = j.value("beta", 0.8);
      params.j_max = j.value("j_max", 24);
      params.schedule = j.value("schedule", std::string{"desk"}) == "paper"
                            ? EasycorParams::Schedule::paper
                            : EasycorParams::Schedule::desk;
      return easycor_lambda(params).window;
    }
    throw InputError("unknown point-set generator kind: " + kind);
  }
  if (!j.contains("points") || !j["points"].is_array()) {
    throw InputError("expected a \"points\" array or a generator descriptor");
  }
  auto points = j["points"].get<std::vector<double>>();
  if (points.empty()) throw InputError("point set is empty");
  std::optional<DensityBoundDescriptor> bound;
  if (j.contains("density_bound") && !j["density_bound"].is_null()) {
    bound = DensityBoundDescriptor{j["density_bound"].value("beta_bar", 1.0),
                                   j["density_bound"].value("C", 1.0)};
  }
  return PointSetWindow(std::move(points), j.value("certified", false), bound);
}

PointSetWindow load_point_window(const std::string& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError(path + ": empty point-set file");
  if (text[first] == '{') {
    return point_window_from_json(parse_json(text, path));
  }
  // Plain-text column: one value per line, '#' starts a comment.
  std::vector<double> points;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v = 0.0;
    if (ls >> v) points.push_back(v);
  }
  if (points.empty()) throw InputError(path + ": no points found");
  return PointSetWindow(std::move(points));
}

ordered_json point_window_json(const PointSetWindow& w) {
  ordered_json j;
  j["points"] = w.points();
  j["certified"] = w.certified();
  if (w.density_bound()) {
    j["density_bound"] = {{"beta_bar", w.density_bound()->beta_bar},
                          {"C", w.density_bound()->c}};
  }
  return j;
}

ordered_json density_report_json(const DensityReport& r, const PointSetWindow& w) {
  ordered_json j;
  j["r"] = r.r;
  j["h_values"] = r.h_values;
  j["sup_curve"] = r.sup_curve;
  j["inf_curve"] = r.inf_curve;
  j["d_plus_estimate"] = r.d_plus_estimate;
  j["d_minus_estimate"] = r.d_minus_estimate;
  j["truncated"] = r.truncated;
  j["window_certified"] = w.certified();
  return j;
}

ordered_json mv_report_json(const MvReport& r) {
  ordered_json j;
  j["lower"] = r.lower;
  j["energy"] = r.energy;
  j["upper"] = r.upper;
  j["delta"] = r.delta;
  j["coeff_energy"] = r.coeff_energy;
  j["holds"] = r.holds;
  return j;
}

ordered_json gram_report_json(const RieszMarginReport& r, std::span<const double> freqs,
                              const GramSection* dump) {
  ordered_json j;
  j["freqs"] = std::vector<double>(freqs.begin(), freqs.end());
  j["set_measure"] = r.set_measure;
  j["complement_mode"] = r.complement_mode;
  j["lambda_min"] = r.lambda_min;
  j["lambda_max"] = r.lambda_max;
  j["target_lower"] = r.target_lower;
  j["margin"] = r.margin;
  j["degenerate"] = r.degenerate;
  j["pass"] = r.pass;
  if (dump != nullptr) {
    auto rows = ordered_json::array();
    for (Eigen::Index i = 0; i < dump->matrix.rows(); ++i) {
      for (Eigen::Index k = 0; k < dump->matrix.cols(); ++k) {
        rows.push_back({dump->matrix(i, k).real(), dump->matrix(i, k).imag()});
      }
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

namespace {

ordered_json check_json(const CheckRecord& c) {
  ordered_json j;
  j["name"] = c.name;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["strict"] = c.strict;
  j["slack"] = c.slack;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

ordered_json certificate_json(const PartitionCertificate& cert) {
  ordered_json j;
  j["f_bar"] = cert.f_bar;
  j["alpha"] = cert.alpha;
  j["beta"] = cert.beta;
  j["epsilon"] = cert.epsilon;
  j["m_cutoff"] = cert.m_cutoff;
  j["k_separation"] = cert.k_separation;
  j["l_star"] = cert.l_star;
  j["r_scale"] = cert.r_scale;
  j["j_modulus"] = cert.j_modulus;
  j["n_modulus"] = cert.n_modulus;
  j["dim_plus_estimate"] = cert.dim_plus_estimate;
  j["epsilon_degenerate"] = cert.epsilon_degenerate;
  j["window_only"] = cert.window_only;
  j["predicted_lower_riesz"] = cert.predicted_lower_riesz;
  j["predicted_upper_riesz"] = cert.predicted_upper_riesz;
  j["all_pass"] = cert.all_pass();
  auto checks = ordered_json::array();
  for (const CheckRecord& c : cert.checks) checks.push_back(check_json(c));
  j["checks"] = std::move(checks);
  return j;
}

PartitionCertificate certificate_from_json(const ordered_json& j) {
  PartitionCertificate cert;
  cert.f_bar = j.at("f_bar").get<double>();
  cert.alpha = j.at("alpha").get<double>();
  cert.beta = j.at("beta").get<double>();
  cert.epsilon = j.at("epsilon").get<double>();
  cert.m_cutoff = j.at("m_cutoff").get<int>();
  cert.k_separation = j.at("k_separation").get<int>();
  cert.l_star = j.at("l_star").get<int>();
  cert.r_scale = j.at("r_scale").get<double>();
  cert.j_modulus = j.at("j_modulus").get<int>();
  cert.n_modulus = j.at("n_modulus").get<int>();
  cert.dim_plus_estimate = j.value("dim_plus_estimate", 0.0);
  cert.epsilon_degenerate = j.value("epsilon_degenerate", false);
  cert.window_only = j.value("window_only", false);
  cert.predicted_lower_riesz = j.at("predicted_lower_riesz").get<double>();
  cert.predicted_upper_riesz = j.at("predicted_upper_riesz").get<double>();
  if (j.contains("checks")) {
    for (const auto& cj : j["checks"]) {
      CheckRecord c;
      c.name = cj.at("name").get<std::string>();
      c.lhs = cj.at("lhs").get<double>();
      c.rhs = cj.at("rhs").get<double>();
      c.strict = cj.value("strict", true);
      c.slack = cj.value("slack", c.rhs - c.lhs);
      c.pass = cj.at("pass").get<bool>();
      cert.checks.push_back(std::move(c));
    }
  }
  return cert;
}

ordered_json validation_report_json(const ValidationReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["target_lower"] = r.target_lower;
  j["upper_limit"] = r.upper_limit;
  j["min_subsample_separation"] = r.min_subsample_separation;
  j["worst_margin_lower"] = r.worst_margin_lower;
  j["worst_margin_upper"] = r.worst_margin_upper;
  auto entries = ordered_json::array();
  for (const ValidationEntry& e : r.entries) {
    ordered_json ej;
    ej["j"] = e.subsample_class;
    ej["m"] = e.window_size;
    ej["effective_size"] = e.effective_size;
    ej["lambda_min"] = e.lambda_min;
    ej["lambda_max"] = e.lambda_max;
    ej["margin_lower"] = e.margin_lower;
    ej["margin_upper"] = e.margin_upper;
    ej["pass"] = e.pass;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["failures"] = r.failures;
  return j;
}

ordered_json easycor_json(const EasycorWindow& win) {
  ordered_json j;
  j["points"] = win.window.points();
  j["beta"] = win.beta;
  j["gamma"] = win.gamma;
  j["schedule"] = win.schedule;
  auto blocks = ordered_json::array();
  for (const EasycorBlock& b : win.blocks) {
    blocks.push_back({{"j", b.index}, {"step", b.step}, {"start", b.start},
                      {"count", b.count}});
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ordered_json progression_json(const ProgressionSearch& s, int n_sub, double delta) {
  ordered_json j;
  j["subsample_n"] = n_sub;
  j["delta"] = delta;
  j["found"] = s.found;
  if (s.certificate) {
    const ProgressionCertificate& c = *s.certificate;
    j["certificate"] = {{"start", c.start},   {"step", c.step},
                        {"n_prog", c.n_prog}, {"delta", c.delta},
                        {"value", c.value},   {"contained", c.contained},
                        {"log_base", c.log_base}};
  } else {
    j["certificate"] = nullptr;
  }
  j["best_value"] = s.best_value;
  j["best_step"] = s.best_step;
  j["best_n_prog"] = s.best_n_prog;
  j["candidates_examined"] = s.candidates_examined;
  j["budget_exhausted"] = s.budget_exhausted;
  return j;
}

}  // namespace espart::io
