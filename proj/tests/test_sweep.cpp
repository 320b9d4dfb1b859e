#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "qlmass/errors.hpp"
#include "qlmass/report_io.hpp"
#include "qlmass/sweep.hpp"
#include "qlmass/sweep_config.hpp"

using namespace qlmass;

namespace {

const char* kMinimal = R"({
  "family": {"type": "hyperbolic"},
  "schedule": {"eps0": 0.2, "ratio": 0.7071067811865476, "count": 4},
  "grid": {"n_theta": 32, "n_phi": 4},
  "tolerances": {},
  "output": {"dir": "out/test_sweep", "prefix": "sweep"}
})";

nlohmann::json minimal() { return nlohmann::json::parse(kMinimal); }

}  // namespace

TEST_CASE("fibonacci directions are unit and balanced") {
  const auto pts = fibonacci_sphere(500);
  REQUIRE(pts.size() == 500);
  std::array<double, 3> sum{};
  for (const auto& p : pts) {
    CHECK(std::hypot(p[0], p[1], p[2]) == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < 3; ++i) sum[i] += p[i];
  }
  for (double s : sum) CHECK(std::abs(s) / 500 < 1e-2);
}

TEST_CASE("cone pairing of simple vectors") {
  const ConePairing time = cone_pairing_report({0, 0, 0, 1}, 256);
  CHECK(time.tag == CausalClass::future_timelike);
  CHECK(time.max_pairing == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(time.min_pairing == doctest::Approx(-1.0).epsilon(1e-12));

  const ConePairing null = cone_pairing_report({1, 0, 0, 1}, 256);
  CHECK(null.tag == CausalClass::future_null);
  CHECK(std::abs(null.max_pairing) <= 1e-12);
  CHECK(null.min_pairing == doctest::Approx(-2.0).epsilon(1e-9));

  const ConePairing space = cone_pairing_report({2, 0, 0, 1}, 256);
  CHECK(space.tag == CausalClass::spacelike);
  CHECK(space.max_pairing == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(space.min_pairing == doctest::Approx(-3.0).epsilon(1e-9));

  CHECK(cone_pairing_report({0, 0, 0, -1}, 256).tag == CausalClass::past_timelike);
  CHECK(cone_pairing_report({0, 0, 0, 0}, 256).tag == CausalClass::zero);
}

TEST_CASE("cone tag agrees with the classifier") {
  const std::vector<MinkowskiVector> vs{{0.3, -0.2, 0.1, 1.0}, {0.6, 0.8, 0, 1.0},
                                        {0.6, 0.8, 0, -1.0}, {1, 1, 1, 0.5}, {0, 0, 0.2, -0.9}};
  for (const auto& v : vs) CHECK(cone_pairing_report(v, 1024).tag == causal_classify(v));
}

TEST_CASE("geometric schedule") {
  const auto e = geometric_schedule(0.2, 0.5, 3);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == 0.2);
  CHECK(e[1] == doctest::Approx(0.1));
  CHECK(e[2] == doctest::Approx(0.05));
  CHECK_THROWS_AS(geometric_schedule(0.2, 1.0, 3), ConfigError);
  CHECK_THROWS_AS(geometric_schedule(-0.2, 0.5, 3), ConfigError);
}

TEST_CASE("default config") {
  const SweepConfig cfg = default_config(AHFamily::ads_schwarzschild(2.0));
  CHECK(cfg.epsilons.size() == 8);
  CHECK(cfg.epsilons.front() == 0.2);
  CHECK(cfg.epsilons.back() == doctest::Approx(0.2 * std::pow(0.5, 3.5)));
  CHECK(cfg.n_theta == 64);
  CHECK(cfg.n_phi == 4);
}

TEST_CASE("config parsing") {
  const SweepConfig cfg = parse_config(kMinimal);
  CHECK(cfg.epsilons.size() == 4);
  CHECK(cfg.n_theta == 32);
  CHECK(cfg.source == "<inline>");

  auto j = minimal();
  j["family"] = {{"type", "ads_schwarzschild"}, {"mass", 0.5}};
  j["alpha"] = "auto";
  j["spinor"] = {{"z1", {0.0, 1.0}}, {"z2", {0.5, 0.0}}};
  j["expect"] = {{"limit_class", "future-timelike"}, {"min_gap_order", 1.5}};
  const SweepConfig ads = parse_config(j.dump());
  CHECK(ads.alpha_auto);
  CHECK(ads.spinor.z1.imag() == 1.0);
  REQUIRE(ads.expect.limit_class.has_value());
  CHECK(*ads.expect.limit_class == CausalClass::future_timelike);
  CHECK(*ads.expect.min_gap_order == 1.5);
}

TEST_CASE("config errors") {
  auto expect_error = [](nlohmann::json j) { CHECK_THROWS_AS(parse_config(j.dump()), ConfigError); };
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  {
    auto j = minimal();
    j["colour"] = 1;
    expect_error(j);
  }
  {
    auto j = minimal();
    j.erase("grid");
    expect_error(j);
  }
  {
    auto j = minimal();
    j.erase("schedule");
    j["epsilons"] = {0.1, 0.2};
    expect_error(j);
  }
  {
    auto j = minimal();
    j["epsilons"] = {0.2, 0.1};
    expect_error(j);
  }
  {
    auto j = minimal();
    j["family"] = {{"type", "kerr"}};
    expect_error(j);
  }
  {
    auto j = minimal();
    j["family"] = {{"type", "ads_schwarzschild"}};
    expect_error(j);
  }
  {
    auto j = minimal();
    j["alpha"] = 0.5;
    expect_error(j);
  }
  {
    auto j = minimal();
    j["grid"]["n_theta"] = 2;
    expect_error(j);
  }
  {
    auto j = minimal();
    j["spinor"] = {{"z1", {0.0, 0.0}}, {"z2", {0.0, 0.0}}};
    expect_error(j);
  }
}

TEST_CASE("hyperbolic sweep is zero and deterministic") {
  const SweepConfig cfg = parse_config(kMinimal);
  const MassSweepRecord a = run_sweep(cfg);
  CHECK(a.passed());
  REQUIRE(a.records.size() == 4);
  for (const auto& r : a.records) {
    REQUIRE(r.ok);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(r.mass.m_by[i]) <= 1e-8);
      CHECK(std::abs(r.mass.m_hat[i]) <= 1e-8);
    }
  }
  CHECK(a.records.front().epsilon < a.records.back().epsilon);
  REQUIRE(a.by_limit.has_value());
  CHECK(a.by_limit->tag == CausalClass::zero);
  CHECK(a.tags_agree);

  const MassSweepRecord b = run_sweep(cfg);
  CHECK(sweep_summary_json(a) == sweep_summary_json(b));
  std::ostringstream ca, cb;
  write_sweep_csv(ca, a);
  write_sweep_csv(cb, b);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("sweep outputs") {
  namespace fs = std::filesystem;
  SweepConfig cfg = parse_config(kMinimal);
  const fs::path dir = fs::temp_directory_path() / "qlmass_test_sweep";
  fs::remove_all(dir);
  cfg.output_dir = dir.string();
  const MassSweepRecord rec = run_sweep(cfg);
  const WrittenFiles files = write_sweep_outputs(cfg, rec);

  std::ifstream csv(files.csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("epsilon,ok,mBY_x1", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 4);

  std::ifstream sum(files.summary);
  const std::string text((std::istreambuf_iterator<char>(sum)), {});
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("passed").get<bool>());
  CHECK(j.at("m_by_limit").at("tag") == "zero");

  bool passed = false;
  const std::string digest = describe_summary(text, passed);
  CHECK(passed);
  CHECK(digest.find("hyperbolic") != std::string::npos);
  CHECK_THROWS_AS(describe_summary("[1, 2]", passed), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("expectation failures are reported") {
  auto j = minimal();
  j["expect"] = {{"limit_class", "future-timelike"}};
  const MassSweepRecord rec = run_sweep(parse_config(j.dump()));
  CHECK_FALSE(rec.passed());
}

TEST_CASE("identity suite on the hyperbolic family") {
  const VerifyReport report = verify_identities(parse_config(kMinimal));
  CHECK(report.passed());
  CHECK(report.checks.size() >= 5);
  for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
}
