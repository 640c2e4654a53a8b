#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "espart/io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using espart::io::ordered_json;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("interval unions round-trip") {
  TempFile f("espart_io_union.json", R"({"intervals": [[0.1, 0.3], [0.5, 0.6]]})");
  const auto u = espart::io::load_interval_union(f.path.string());
  CHECK(u.measure() == doctest::Approx(0.3));
  const auto j = espart::io::interval_union_json(u);
  const auto raw = j["intervals"].get<std::vector<std::vector<double>>>();
  std::vector<std::pair<double, double>> pairs;
  for (const auto& p : raw) pairs.emplace_back(p[0], p[1]);
  const auto back = espart::IntervalUnion::normalize(pairs);
  CHECK(back.measure() == u.measure());
  CHECK(back.segments().size() == u.segments().size());
}

TEST_CASE("covers round-trip through json") {
  const auto cover = fixtures::quarter_powers_cover(4);
  const auto j = espart::io::cover_json(cover);
  const auto back = espart::io::cover_from_json(j);
  CHECK(back.lengths == cover.lengths);
  REQUIRE(back.tail.has_value());
  CHECK(back.tail->c == cover.tail->c);
  CHECK(back.tail->rho == cover.tail->rho);
  CHECK(back.tail->from_n == cover.tail->from_n);
  CHECK(back.split_z == cover.split_z);
  CHECK(back.alpha == cover.alpha);
  REQUIRE(back.centers.has_value());
  CHECK(*back.centers == *cover.centers);
}

TEST_CASE("point windows load from json, descriptors, and plain text") {
  TempFile json_file("espart_io_points.json",
                     R"({"points": [3.0, -1.0, 0.5], "certified": true})");
  const auto w = espart::io::load_point_window(json_file.path.string());
  REQUIRE(w.size() == 3);
  CHECK(w.points()[0] == doctest::Approx(-1.0));
  CHECK(w.certified());

  TempFile desc_file("espart_io_desc.json",
                     R"({"kind": "easycor", "beta": 0.8, "j_max": 4})");
  const auto gen = espart::io::load_point_window(desc_file.path.string());
  CHECK(gen.size() == 2 + 3 + 4 + 5);

  TempFile text_file("espart_io_points.txt", "1.5\n# comment\n-2.5\n0.0\n");
  const auto t = espart::io::load_point_window(text_file.path.string());
  REQUIRE(t.size() == 3);
  CHECK(t.points()[0] == doctest::Approx(-2.5));

  TempFile empty_file("espart_io_empty.txt", "\n");
  CHECK_THROWS_AS(espart::io::load_point_window(empty_file.path.string()),
                  espart::InputError);
}

TEST_CASE("certificates round-trip with identical flags") {
  const auto cover = fixtures::quarter_powers_cover();
  const auto cert = espart::extract(cover, fixtures::cube_window());
  const auto j = espart::io::certificate_json(cert);
  const auto back = espart::io::certificate_from_json(j);
  CHECK(back.f_bar == cert.f_bar);
  CHECK(back.epsilon == cert.epsilon);
  CHECK(back.m_cutoff == cert.m_cutoff);
  CHECK(back.k_separation == cert.k_separation);
  CHECK(back.l_star == cert.l_star);
  CHECK(back.n_modulus == cert.n_modulus);
  REQUIRE(back.checks.size() == cert.checks.size());
  for (std::size_t i = 0; i < cert.checks.size(); ++i) {
    CHECK(back.checks[i].name == cert.checks[i].name);
    CHECK(back.checks[i].lhs == cert.checks[i].lhs);
    CHECK(back.checks[i].pass == cert.checks[i].pass);
  }
  // Serialization is byte-stable.
  CHECK(espart::io::certificate_json(back).dump() == j.dump());
}

TEST_CASE("malformed documents raise input errors") {
  TempFile bad("espart_io_bad.json", "{not json");
  CHECK_THROWS_AS(espart::io::load_interval_union(bad.path.string()), espart::InputError);
  TempFile wrong("espart_io_wrong.json", R"({"intervals": [[0.1]]})");
  CHECK_THROWS_AS(espart::io::load_interval_union(wrong.path.string()),
                  espart::InputError);
  CHECK_THROWS_AS(espart::io::load_cover("/nonexistent/cover.json"), espart::InputError);
}
