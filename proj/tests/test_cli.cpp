#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptsym/cli/app.hpp"

using ptsym::cli::run;
using Catch::Approx;

namespace {

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/ptsym_cli_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Csv {
  std::string config;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;
};

Csv parse_csv(const std::string& text) {
  Csv out;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      if (!have_header)
        out.config = line.substr(2);
      else
        out.footer.push_back(line.substr(2));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      out.header = cells;
      have_header = true;
    } else {
      out.rows.push_back(cells);
    }
  }
  return out;
}

int column(const Csv& c, const std::string& name) {
  for (std::size_t i = 0; i < c.header.size(); ++i)
    if (c.header[i] == name) return static_cast<int>(i);
  FAIL("missing column " + name);
  return -1;
}

}  // namespace

TEST_CASE("grid strings expand to inclusive uniform grids") {
  using ptsym::cli::detail::parse_grid;
  const auto g = parse_grid("0:1:0.25");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);

  // The stop value is kept when rounding would land just short of it.
  const auto h = parse_grid("0:0.3:0.1");
  REQUIRE(h.size() == 4);
  CHECK(h.back() == 0.3);

  // A stop that falls between grid points is not overshot.
  const auto k = parse_grid("0:1:0.3");
  REQUIRE(k.size() == 4);
  CHECK(k.back() == Approx(0.9));

  CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:b:c"), std::invalid_argument);
}

TEST_CASE("k ranges accept single values and spans") {
  using ptsym::cli::detail::parse_k_range;
  CHECK(parse_k_range("3") == std::vector<int>{3});
  CHECK(parse_k_range("0..3") == std::vector<int>{0, 1, 2, 3});
  CHECK(parse_k_range("-2..0") == std::vector<int>{-2, -1, 0});
  CHECK_THROWS_AS(parse_k_range("5..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_k_range("x"), std::invalid_argument);
}

TEST_CASE("wedges emits one row per index with the documented angles") {
  const std::string out = tmp_path("wedges.csv");
  REQUIRE(run({"wedges", "--epsilon", "0", "--k", "0..3", "--out", out,
               "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 4);
  const int c = column(csv, "center");
  CHECK(std::stod(csv.rows[0][c]) == Approx(0.0).margin(1e-14));
  CHECK(std::stod(csv.rows[1][c]) == Approx(M_PI).margin(1e-13));
  CHECK(std::stod(csv.rows[2][c]) == Approx(2.0 * M_PI).margin(1e-13));
  CHECK(std::stod(csv.rows[3][c]) == Approx(3.0 * M_PI).margin(1e-13));
}

TEST_CASE("json output carries the envelope fields") {
  const std::string out = tmp_path("wedges.json");
  REQUIRE(run({"wedges", "--epsilon", "4", "--k", "2", "--format", "json",
               "--out", out, "--fixed-clock"}) == 0);
  const auto env = nlohmann::json::parse(slurp(out));
  CHECK(env.at("version").is_string());
  CHECK(env.at("config").at("command") == "wedges");
  CHECK(env.at("wall_time_s") == 0.0);
  REQUIRE(env.at("rows").size() == 1);
  CHECK(env.at("rows")[0].at("center").get<double>() ==
        Approx(3.0 * M_PI / 4.0).margin(1e-13));
}

TEST_CASE("usage problems exit with code 1") {
  CHECK(run({"wedges", "--epsilon", "0"}) == 1);          // missing --k
  CHECK(run({"wedges", "--epsilon", "-1", "--k", "0"}) == 1);
  CHECK(run({"period-scan", "--k", "0", "--grid", "junk", "--out",
             tmp_path("junk.csv")}) == 1);
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({}) == 1);
  CHECK(run({"--version"}) == 0);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("turning points appear on the unit circle") {
  const std::string out = tmp_path("tp.csv");
  REQUIRE(run({"turning-points", "--epsilon", "0.5", "--k", "2", "--out",
               out, "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::stod(csv.rows[0][column(csv, "theta")]) ==
        Approx(3.0 * M_PI / 2.0).margin(1e-12));
  CHECK(std::stod(csv.rows[0][column(csv, "residual")]) < 1e-12);
}

TEST_CASE("transitions lists crossings in deformation order") {
  // The default turning-point span collects the whole history of wedge 1:
  // its resident point leaves at 1 and the next one arrives at 3.
  const std::string out = tmp_path("trans.csv");
  REQUIRE(run({"transitions", "--k-wedge", "1", "--out", out,
               "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 2);
  const int e = column(csv, "epsilon");
  const int kind = column(csv, "kind");
  const int ktp = column(csv, "k_tp");
  CHECK(std::stod(csv.rows[0][e]) == Approx(1.0).margin(1e-12));
  CHECK(csv.rows[0][kind] == "exit");
  CHECK(csv.rows[0][ktp] == "1");
  CHECK(std::stod(csv.rows[1][e]) == Approx(3.0).margin(1e-12));
  CHECK(csv.rows[1][kind] == "entry");
  CHECK(csv.rows[1][ktp] == "2");
}

TEST_CASE("orbit reports closure data in the footer and summary") {
  const std::string out = tmp_path("orbit.json");
  REQUIRE(run({"orbit", "--k", "0", "--epsilon", "1", "--format", "json",
               "--out", out, "--fixed-clock"}) == 0);
  const auto env = nlohmann::json::parse(slurp(out));
  const auto& sum = env.at("summary");
  CHECK(sum.at("closed") == true);
  CHECK(sum.at("period").get<double>() ==
        Approx(2.4286506478875816).margin(1e-5));
  CHECK(sum.at("pt_symmetric") == true);
  CHECK(sum.at("energy_drift").get<double>() < 1e-8);
  CHECK(env.at("rows").size() > 10);

  const std::string out_csv = tmp_path("orbit.csv");
  REQUIRE(run({"orbit", "--k", "0", "--epsilon", "1", "--out", out_csv,
               "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out_csv));
  bool has_period_line = false;
  for (const auto& line : csv.footer)
    has_period_line |= line.find("period=2.42") != std::string::npos;
  CHECK(has_period_line);
}

TEST_CASE("period scans are byte-identical for any worker count") {
  const std::string a = tmp_path("scan1.csv");
  const std::string b = tmp_path("scan4.csv");
  REQUIRE(run({"period-scan", "--k", "0", "--grid", "0:1:0.5", "--workers",
               "1", "--out", a, "--fixed-clock"}) == 0);
  REQUIRE(run({"period-scan", "--k", "0", "--grid", "0:1:0.5", "--workers",
               "4", "--out", b, "--fixed-clock"}) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("a colliding pair yields an empty result set and success") {
  const std::string out = tmp_path("empty.csv");
  REQUIRE(run({"spectrum", "--epsilon", "2", "--k-pair", "1", "--emax",
               "30", "--out", out, "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  CHECK(csv.rows.empty());
  REQUIRE_FALSE(csv.header.empty());
  CHECK(csv.header.front() == "epsilon");
}

TEST_CASE("spectrum finds the harmonic levels through the cli") {
  const std::string out = tmp_path("spec.csv");
  REQUIRE(run({"spectrum", "--epsilon", "0", "--k-pair", "0", "--emax",
               "8", "--out", out, "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 4);
  const int re = column(csv, "re_E");
  for (std::size_t n = 0; n < csv.rows.size(); ++n)
    CHECK(std::stod(csv.rows[n][re]) ==
          Approx(2.0 * n + 1.0).margin(1e-6));
}

namespace {

// Shared by the resume cases below; produced once per test run.
std::string ensure_scan_envelope() {
  const std::string path = tmp_path("scan_a.json");
  if (std::ifstream(path).good()) return path;
  REQUIRE(run({"spectrum-scan", "--k-pair", "0", "--grid", "0:0.2:0.1",
               "--emax", "10", "--format", "json", "--out", path,
               "--fixed-clock"}) == 0);
  return path;
}

}  // namespace

TEST_CASE("spectrum scans resume from a saved envelope") {
  std::remove(tmp_path("scan_a.json").c_str());
  const std::string first = ensure_scan_envelope();
  const std::string second = tmp_path("scan_b.json");
  REQUIRE(run({"spectrum-scan", "--k-pair", "0", "--grid", "0.3:0.4:0.1",
               "--resume", first, "--format", "json", "--out", second,
               "--fixed-clock"}) == 0);
  const auto env = nlohmann::json::parse(slurp(second));
  bool saw_old = false, saw_new = false, saw_continued = false;
  for (const auto& row : env.at("rows")) {
    const double eps = row.at("epsilon").get<double>();
    saw_old |= (eps == 0.0);
    saw_new |= (eps == 0.4);
    if (eps == 0.4 && row.at("branch_label") == 0) {
      saw_continued = true;
      CHECK(row.at("provenance") == "continuation");
      CHECK(row.at("status") == "ok");
    }
  }
  CHECK(saw_old);
  CHECK(saw_new);
  CHECK(saw_continued);

  // The resumed window is pinned by the envelope.
  CHECK(env.at("config").at("e_min") == 0.0);
  CHECK(env.at("config").at("e_max") == 10.0);
}

TEST_CASE("resume rejects mismatched or unusable envelopes") {
  const std::string first = ensure_scan_envelope();
  CHECK(run({"spectrum-scan", "--k-pair", "1", "--grid", "0.3:0.4:0.1",
             "--resume", first, "--out", tmp_path("r1.json")}) == 1);
  CHECK(run({"spectrum-scan", "--k-pair", "0", "--grid", "0:0.1:0.1",
             "--resume", first, "--out", tmp_path("r2.json")}) == 1);
  CHECK(run({"spectrum-scan", "--k-pair", "0", "--grid", "0.3:0.4:0.1",
             "--emax", "12", "--resume", first,
             "--out", tmp_path("r3.json")}) == 1);

  const std::string corrupt = tmp_path("corrupt.json");
  std::ofstream(corrupt) << "{ not json";
  CHECK(run({"spectrum-scan", "--k-pair", "0", "--grid", "0.3:0.4:0.1",
             "--resume", corrupt, "--out", tmp_path("r4.json")}) == 1);
}

TEST_CASE("csv doubles round-trip exactly") {
  const std::string out = tmp_path("rt.csv");
  REQUIRE(run({"turning-points", "--epsilon", "0.7", "--k", "0..4",
               "--out", out, "--fixed-clock"}) == 0);
  const Csv csv = parse_csv(slurp(out));
  const int th = column(csv, "theta");
  for (const auto& row : csv.rows) {
    const double parsed = std::stod(row[th]);
    CHECK(ptsym::support::format_double(parsed) == row[th]);
  }
}
