#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "config_io.hpp"
#include "csv.hpp"
#include "manifest.hpp"
#include "specshare/analytic.hpp"
#include "specshare/errors.hpp"
#include "validation.hpp"

using namespace specshare;
using namespace specshare::app;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "specshare_test_app";
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const ScenarioConfig d = parse_config("");
  CHECK(d == ScenarioConfig{});

  const ScenarioConfig c = parse_config(R"(
# reference scenario, underlay
mode = underlay
subchannels.total = 8
density.cellular = 2e-4   # users
density.manet = 3e-4
sir_threshold_db = 4.771212547196624
power_ratio_db = 5
sic.enabled = true
sic.kappa_db = 2
fading.cellular = diversity:3
fading.interferer = unit
link_geometry = voronoi
)");
  CHECK(c.mode == SharingMode::underlay);
  CHECK(c.total_subchannels == 8);
  CHECK(c.cellular_density == 2e-4);
  CHECK(c.manet_density == 3e-4);
  CHECK(c.sir_threshold == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.power_ratio == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(c.sic.enabled);
  CHECK(c.sic.kappa == doctest::Approx(std::pow(10.0, 0.2)).epsilon(1e-14));
  CHECK(c.fading_cell == channel::FadingModel::diversity(3));
  CHECK(c.fading_interferer == channel::FadingModel::unit());
  CHECK(c.fading_manet == channel::FadingModel::rayleigh());
  CHECK(c.link_geometry == LinkGeometry::voronoi);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("nonsense = 1"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("density.cellular"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("density.cellular = abc"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("density.cellular = 1e-4x"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("sir_threshold = 3\nsir_threshold_db = 4.77"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("mode = sideways"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("fading.manet = nakagami"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("fading.manet = diversity:0"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("sic.enabled = maybe"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("subchannels.cellular = 4"), InvalidParameter);  // K + K~ != M
  try {
    parse_config("sir_threshold = 0.5");
    FAIL("expected a theta error");
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("theta >= 1") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/specshare.cfg"), InvalidParameter);
}

TEST_CASE("config round trip and digest") {
  ScenarioConfig c;
  c.mode = SharingMode::underlay;
  c.cellular_density = 1.0 / 3.0 * 1e-4;
  c.power_ratio = std::pow(10.0, 0.37);
  c.sic = {true, 1.7};
  c.fading_manet = channel::FadingModel::diversity(4);
  c.window_mean_count = 400;
  const std::string text = serialize_config(c);
  const ScenarioConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(serialize_config(back) == text);
  CHECK(config_digest(back) == config_digest(c));
  CHECK(config_digest(c).size() == 64);
  CHECK(config_digest(c) != config_digest(ScenarioConfig{}));

  // Reordered keys, comments and whitespace do not change the digest.
  const ScenarioConfig a = parse_config("density.manet = 2e-4\nmode = underlay\n");
  const ScenarioConfig b = parse_config("# x\n  mode=underlay\n\ndensity.manet   =   0.0002 \n");
  CHECK(config_digest(a) == config_digest(b));
  // dB and linear spellings of one value agree.
  CHECK(parse_config("power_ratio_db = 10").power_ratio == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("csv") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CsvTable t({"x", "label"});
  t.row().add(0.1).add("a,b");
  t.row().add(1e-300).add("c");
  std::ostringstream out;
  t.write(out, "note");
  CHECK(out.str() == "# note\r\nx,label\r\n0.1,\"a,b\"\r\n1e-300,c\r\n");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("manifest") {
  const RunManifest m = make_manifest(ScenarioConfig{}, "outage", 42);
  CHECK(m.tool_version == std::string(tool_version()));
  CHECK(m.timestamp.size() == 20);
  CHECK(m.timestamp.back() == 'Z');
  const std::string comment = header_comment(m);
  CHECK(comment.find("config_digest=" + m.config_digest) != std::string::npos);
  CHECK(comment.find("seed=42") != std::string::npos);
  CHECK(comment.find(m.timestamp) == std::string::npos);
  const auto j = nlohmann::json::parse(manifest_json(m));
  CHECK(j.at("seed") == 42);
  CHECK(j.at("command") == "outage");
  CHECK(j.at("timestamp") == m.timestamp);
}

TEST_CASE("cmd_outage") {
  OutageArgs args;
  args.densities = {0.0, 2e-4};
  args.trials = 5000;
  args.seed = 5;
  std::ostringstream out1;
  std::ostringstream out2;
  std::ostringstream err;
  REQUIRE(cmd_outage(args, out1, err) == exit_ok);
  REQUIRE(cmd_outage(args, out2, err) == exit_ok);
  CHECK(out1.str() == out2.str());

  const auto l = lines(out1.str());
  REQUIRE(l.size() == 4);
  CHECK(l[0].rfind("# specshare outage config_digest=", 0) == 0);
  CHECK(l[1] == "density,pout_lb,pout_ub,pout_sim,ci_half_width,trials,mode,sic");
  CHECK(l[2] == "0,0,0,0,0,5000,overlay,off");

  args.seed = 6;
  std::ostringstream other;
  cmd_outage(args, other, err);
  CHECK(other.str() != out1.str());

  // File output with a sidecar manifest.
  const auto path = scratch_dir() / "outage.csv";
  args.seed = 5;
  args.out = path.string();
  std::ostringstream quiet;
  REQUIRE(cmd_outage(args, quiet, err) == exit_ok);
  CHECK(quiet.str().empty());
  CHECK(slurp(path) == out1.str());
  const auto j = nlohmann::json::parse(slurp(path.string() + ".manifest.json"));
  CHECK(j.at("seed") == 5);

  // Error paths.
  OutageArgs bad = args;
  bad.out.clear();
  bad.trials = 0;
  std::ostringstream e2;
  CHECK(cmd_outage(bad, quiet, e2) == exit_invalid_config);
  bad.trials = 10;
  bad.densities = {-1.0};
  CHECK(cmd_outage(bad, quiet, e2) == exit_invalid_config);
  bad.densities = {1e-4};
  bad.out = "/nonexistent-dir/x.csv";
  CHECK(cmd_outage(bad, quiet, e2) == exit_io_failure);
}

TEST_CASE("cmd_outage: sim/lb near 1 down a density ladder") {
  const ScenarioConfig cfg;
  const std::vector<double> ladder = density_ladder(cfg, Network::manet, 0.04);
  REQUIRE(ladder.size() == 4);
  CHECK(ladder.front() / ladder.back() == doctest::Approx(10.0));
  OutageArgs args;
  args.network = Network::manet;
  args.densities = ladder;
  args.trials = 40000;
  const CsvTable t = outage_table(cfg, args);
  std::ostringstream out;
  t.write(out);
  const auto l = lines(out.str());
  std::vector<double> ratio;
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::istringstream row(l[i]);
    std::string density, lb, ub, sim;
    std::getline(row, density, ',');
    std::getline(row, lb, ',');
    std::getline(row, ub, ',');
    std::getline(row, sim, ',');
    ratio.push_back(std::stod(sim) / std::stod(lb));
  }
  REQUIRE(ratio.size() == 4);
  // Front is the largest density; the bound tightens as density falls, but
  // the smallest rung is also the noisiest, so only the end points are pinned.
  CHECK(ratio.front() >= 0.97);
  CHECK(ratio.back() < 1.25);
}

TEST_CASE("cmd_validate") {
  const auto path = scratch_dir() / "bad.cfg";
  std::ofstream(path) << "sir_threshold = 0.5\n";
  ValidateArgs args;
  args.config_path = path.string();
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_validate(args, out, err) == exit_invalid_config);
  CHECK(err.str().find("theta >= 1") != std::string::npos);

  args.config_path.clear();
  std::ostringstream ok_out;
  CHECK(cmd_validate(args, ok_out, err) == exit_ok);
  CHECK(ok_out.str().find("FAIL") == std::string::npos);
  CHECK(ok_out.str().find("all checks passed") != std::string::npos);
}

TEST_CASE("cmd_weights") {
  std::ostringstream out;
  std::ostringstream err;

  SUBCASE("symmetric config prints eta* = 1") {
    const auto path = scratch_dir() / "sym.cfg";
    std::ofstream(path) << "density.base_station = " << format_number(1.0 / (8.0 * std::numbers::pi * 25.0))
                        << "\nmanet_link_distance = 5\n";
    REQUIRE(cmd_weights({path.string(), ""}, out, err) == exit_ok);
    CHECK(out.str().find("eta_star = 1\n") != std::string::npos);
  }

  SUBCASE("SIC config prints chi") {
    const auto path = scratch_dir() / "sic.cfg";
    std::ofstream(path) << "sic.enabled = true\n";
    const auto csv = scratch_dir() / "weights.csv";
    REQUIRE(cmd_weights({path.string(), csv.string()}, out, err) == exit_ok);
    const double chi = 1.0 - std::pow(3.0 * std::pow(10.0, 0.2), -0.5);
    std::ostringstream want;
    want << "chi = " << std::fixed << std::setprecision(5) << chi << '\n';
    CHECK(out.str().find(want.str()) != std::string::npos);
    CHECK(slurp(csv).find("chi,") != std::string::npos);
  }

  SUBCASE("underlay away from eta* names exactly one outage-limited network") {
    const auto path = scratch_dir() / "u.cfg";
    std::ofstream(path) << "mode = underlay\npower_ratio_db = 8\n";
    REQUIRE(cmd_weights({path.string(), ""}, out, err) == exit_ok);
    CHECK(out.str().find("outage_limited = manet\n") != std::string::npos);
  }
}

TEST_CASE("cmd_tradeoff, analytic") {
  TradeoffArgs args;
  args.sweep = "fractions:0,0.5,1";
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(cmd_tradeoff(args, out, err) == exit_ok);
  const auto l = lines(out.str());
  REQUIRE(l.size() == 5);  // comment, header, three rows of one line
  CHECK(l[1] == "c_cell,c_manet,source,binding");
  CHECK(l[2].find(",0,line_phi_low,") != std::string::npos);
  CHECK(l[4].rfind("0,", 0) == 0);

  // SIC gives two lines.
  const auto sic_path = scratch_dir() / "sic_t.cfg";
  std::ofstream(sic_path) << "sic.enabled = true\n";
  args.config_path = sic_path.string();
  std::ostringstream sic_out;
  REQUIRE(cmd_tradeoff(args, sic_out, err) == exit_ok);
  CHECK(sic_out.str().find("line_phi_high") != std::string::npos);

  // Underlay at eta* gives the overlay line.
  ScenarioConfig u;
  u.mode = SharingMode::underlay;
  u.power_ratio = analytic::optimal_power_ratio(u);
  const auto lo = tradeoff_table(ScenarioConfig{}, TradeoffArgs{});
  const auto lu = tradeoff_table(u, TradeoffArgs{});
  std::ostringstream so;
  std::ostringstream su;
  lo.write(so);
  lu.write(su);
  auto numbers = [](const std::string& text) {
    std::vector<double> v;
    for (const auto& line : lines(text)) {
      if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
      std::istringstream row(line);
      std::string a, b;
      std::getline(row, a, ',');
      std::getline(row, b, ',');
      v.push_back(std::stod(a));
      v.push_back(std::stod(b));
    }
    return v;
  };
  const auto vo = numbers(so.str());
  const auto vu = numbers(su.str());
  REQUIRE(vo.size() == vu.size());
  for (std::size_t i = 0; i < vo.size(); ++i) CHECK(vu[i] == doctest::Approx(vo[i]).epsilon(1e-12));

  TradeoffArgs bad;
  bad.epsilon = 1.5;
  CHECK(cmd_tradeoff(bad, out, err) == exit_invalid_config);
  bad.epsilon.reset();
  bad.sweep = "halves:1";
  CHECK(cmd_tradeoff(bad, out, err) == exit_invalid_config);
  bad.sweep = "fractions:0,2";
  CHECK(cmd_tradeoff(bad, out, err) == exit_invalid_config);
}

TEST_CASE("sweep parsing") {
  const auto f = parse_sweep("fractions:0,0.25,1");
  CHECK(f.kind == montecarlo::TradeoffSweep::Kind::capacity_fractions);
  CHECK(f.values == std::vector<double>{0.0, 0.25, 1.0});
  const auto d = parse_sweep("densities:1e-4,2e-4");
  CHECK(d.kind == montecarlo::TradeoffSweep::Kind::manet_densities);
  CHECK(d.values.size() == 2);
  CHECK_THROWS_AS(parse_sweep("fractions:"), InvalidParameter);
  CHECK_THROWS_AS(parse_sweep("fractions:a"), InvalidParameter);
}

TEST_CASE("SPECSHARE_THREADS caps the worker count") {
  ::setenv("SPECSHARE_THREADS", "2", 1);
  CHECK(resolve_threads(8) == 2);
  CHECK(resolve_threads(1) == 1);
  CHECK(resolve_threads(0) <= 2);
  ::unsetenv("SPECSHARE_THREADS");
  CHECK(resolve_threads(8) == 8);
  CHECK(resolve_threads(0) >= 1);
}
