#pragma once

#include <string>

#include <json.hpp>

#include "espart/bounds.hpp"
#include "espart/constructions.hpp"
#include "espart/gram.hpp"
#include "espart/intervals.hpp"
#include "espart/partition.hpp"
#include "espart/pointset.hpp"

namespace espart::io {

using ordered_json = nlohmann::ordered_json;

// {"intervals": [[a,b], ...]} — loaded through normalize.
IntervalUnion load_interval_union(const std::string& path);
ordered_json interval_union_json(const IntervalUnion& u);

// {"lengths": [...], "tail": {"kind":"geometric","c":..,"rho":..,"from_n":..}|null,
//  "centers": [...]|null, "Z": int, "alpha": real}
CoverSpec load_cover(const std::string& path);
CoverSpec cover_from_json(const ordered_json& j);
ordered_json cover_json(const CoverSpec& c);

// {"points": [...]} with optional "certified" and "density_bound", a
// generator descriptor {"kind": "easycor", ...}, or a plain-text column of
// one number per line.
PointSetWindow load_point_window(const std::string& path);
PointSetWindow point_window_from_json(const ordered_json& j);
ordered_json point_window_json(const PointSetWindow& w);

ordered_json density_report_json(const DensityReport& r,
                                 const PointSetWindow& w);
ordered_json mv_report_json(const MvReport& r);
ordered_json gram_report_json(const RieszMarginReport& r,
                              std::span<const double> freqs,
                              const GramSection* dump = nullptr);
ordered_json certificate_json(const PartitionCertificate& cert);
PartitionCertificate certificate_from_json(const ordered_json& j);
ordered_json validation_report_json(const ValidationReport& r);
ordered_json easycor_json(const EasycorWindow& win);
ordered_json progression_json(const ProgressionSearch& s, int n_sub, double delta);

ordered_json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace espart::io
