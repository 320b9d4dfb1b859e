#include "qlmass/sweep_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qlmass/errors.hpp"

namespace qlmass {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing required key '" + key + "'");
  return obj.at(key);
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(what + ": expected a finite number");
  return d;
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + ": expected an integer");
  return v.get<int>();
}

std::vector<double> as_number_list(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail(what + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, what));
  return out;
}

double positive(double v, const std::string& what) {
  if (!(v > 0.0)) fail(what + ": must be positive");
  return v;
}

AHFamily parse_family(const json& f) {
  if (!f.is_object()) fail("family: expected an object");
  const std::string type = require(f, "type", "family").get<std::string>();
  const double rho_max =
      f.contains("rho_max") ? as_number(f.at("rho_max"), "family.rho_max") : AHFamily::kDefaultRhoMax;
  try {
    if (type == "hyperbolic") {
      reject_unknown(f, {"type", "rho_max"}, "family");
      return AHFamily::hyperbolic(rho_max);
    }
    if (type == "ads_schwarzschild") {
      reject_unknown(f, {"type", "rho_max", "mass"}, "family");
      const double m = as_number(require(f, "mass", "family"), "family.mass");
      return AHFamily::ads_schwarzschild(m, rho_max);
    }
    if (type == "perturbed_round") {
      reject_unknown(f, {"type", "rho_max", "psi_legendre", "remainder"}, "family");
      LegendreSeries psi(as_number_list(require(f, "psi_legendre", "family"), "family.psi_legendre"));
      std::optional<ConformalRemainder> rem;
      if (f.contains("remainder")) {
        const json& r = f.at("remainder");
        reject_unknown(r, {"power", "legendre"}, "family.remainder");
        ConformalRemainder cr;
        cr.profile = LegendreSeries(
            as_number_list(require(r, "legendre", "family.remainder"), "family.remainder.legendre"));
        if (r.contains("power")) cr.power = as_number(r.at("power"), "family.remainder.power");
        rem = cr;
      }
      return AHFamily::perturbed_round(std::move(psi), rem, rho_max);
    }
  } catch (const DomainError& e) {
    fail(std::string("family: ") + e.what());
  }
  fail("family.type: unknown family '" + type + "'");
}

std::complex<double> parse_complex(const json& v, const std::string& what) {
  if (v.is_number()) return {as_number(v, what), 0.0};
  const std::vector<double> c = as_number_list(v, what);
  if (c.size() != 2) fail(what + ": expected [re, im]");
  return {c[0], c[1]};
}

}  // namespace

std::vector<double> geometric_schedule(double eps0, double ratio, int count) {
  if (!(eps0 > 0.0)) throw ConfigError("schedule: eps0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("schedule: ratio must lie in (0, 1)");
  if (count < 1) throw ConfigError("schedule: count must be at least 1");
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = eps0 * std::pow(ratio, k);
  return out;
}

SweepConfig default_config(const AHFamily& family) {
  SweepConfig cfg;
  cfg.family = family;
  cfg.epsilons = geometric_schedule(0.2, 1.0 / std::sqrt(2.0), 8);
  return cfg;
}

SweepConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) fail(source + ": top level must be an object");
  reject_unknown(j,
                 {"family", "epsilons", "schedule", "grid", "embedding", "spinor", "alpha",
                  "eta_samples", "tolerances", "output", "expect", "description"},
                 "config");

  SweepConfig cfg;
  cfg.source = source;
  try {
    cfg.family = parse_family(require(j, "family", "config"));

    if (j.contains("epsilons") == j.contains("schedule")) {
      fail("config: exactly one of 'epsilons' or 'schedule' is required");
    }
    if (j.contains("epsilons")) {
      cfg.epsilons = as_number_list(j.at("epsilons"), "epsilons");
    } else {
      const json& s = j.at("schedule");
      reject_unknown(s, {"eps0", "ratio", "count"}, "schedule");
      cfg.epsilons = geometric_schedule(as_number(require(s, "eps0", "schedule"), "schedule.eps0"),
                                        as_number(require(s, "ratio", "schedule"), "schedule.ratio"),
                                        as_int(require(s, "count", "schedule"), "schedule.count"));
    }
    for (std::size_t k = 0; k < cfg.epsilons.size(); ++k) {
      const double e = cfg.epsilons[k];
      if (!(e > 0.0) || e > cfg.family.rho_max()) {
        fail("epsilons: every value must lie in (0, rho_max]");
      }
      if (k > 0 && !(e < cfg.epsilons[k - 1])) fail("epsilons: must be strictly decreasing");
    }

    const json& grid = require(j, "grid", "config");
    reject_unknown(grid, {"n_theta", "n_phi"}, "grid");
    cfg.n_theta = as_int(require(grid, "n_theta", "grid"), "grid.n_theta");
    cfg.n_phi = as_int(require(grid, "n_phi", "grid"), "grid.n_phi");
    if (cfg.n_theta < 4) fail("grid.n_theta: must be at least 4");
    if (cfg.n_phi < 1) fail("grid.n_phi: must be at least 1");

    if (j.contains("embedding")) {
      const json& e = j.at("embedding");
      reject_unknown(e, {"branch", "interpolation_nodes"}, "embedding");
      if (e.contains("branch")) cfg.branch = as_int(e.at("branch"), "embedding.branch");
      if (cfg.branch != 1 && cfg.branch != -1) fail("embedding.branch: must be +1 or -1");
      if (e.contains("interpolation_nodes")) {
        cfg.interpolation_nodes = as_int(e.at("interpolation_nodes"), "embedding.interpolation_nodes");
        if (cfg.interpolation_nodes < 8) fail("embedding.interpolation_nodes: must be at least 8");
      }
    }

    if (j.contains("spinor")) {
      const json& s = j.at("spinor");
      reject_unknown(s, {"z1", "z2"}, "spinor");
      cfg.spinor.z1 = parse_complex(require(s, "z1", "spinor"), "spinor.z1");
      cfg.spinor.z2 = parse_complex(require(s, "z2", "spinor"), "spinor.z2");
      if (cfg.spinor.norm_squared() == 0.0) fail("spinor: z must be nonzero");
    }

    if (j.contains("alpha")) {
      const json& a = j.at("alpha");
      if (a.is_string()) {
        if (a.get<std::string>() != "auto") fail("alpha: expected a number >= 1 or \"auto\"");
        cfg.alpha_auto = true;
      } else {
        cfg.alpha = as_number(a, "alpha");
        if (!(*cfg.alpha >= 1.0)) fail("alpha: must be >= 1");
      }
    }

    if (j.contains("eta_samples")) {
      cfg.eta_samples = as_int(j.at("eta_samples"), "eta_samples");
      if (cfg.eta_samples < 1) fail("eta_samples: must be at least 1");
    }

    const json& tol = require(j, "tolerances", "config");
    reject_unknown(tol,
                   {"causal", "ode", "isometry", "hyperboloid", "identity", "zero_mass", "spinor",
                    "geodesic"},
                   "tolerances");
    auto read_positive = [](const json& obj, const std::string& where, const char* key, double& dst) {
      if (obj.contains(key)) {
        const std::string what = where + "." + key;
        dst = positive(as_number(obj.at(key), what), what);
      }
    };
    auto& t = cfg.tolerances;
    if (tol.contains("causal")) {
      double c = 0.0;
      read_positive(tol, "tolerances", "causal", c);
      t.causal = c;
    }
    read_positive(tol, "tolerances", "ode", t.ode);
    read_positive(tol, "tolerances", "isometry", t.isometry);
    read_positive(tol, "tolerances", "hyperboloid", t.hyperboloid);
    read_positive(tol, "tolerances", "identity", t.identity);
    read_positive(tol, "tolerances", "zero_mass", t.zero_mass);
    read_positive(tol, "tolerances", "spinor", t.spinor);
    read_positive(tol, "tolerances", "geodesic", t.geodesic);

    const json& out = require(j, "output", "config");
    reject_unknown(out, {"dir", "prefix"}, "output");
    cfg.output_dir = require(out, "dir", "output").get<std::string>();
    if (cfg.output_dir.empty()) fail("output.dir: must not be empty");
    if (out.contains("prefix")) cfg.output_prefix = out.at("prefix").get<std::string>();

    if (j.contains("expect")) {
      const json& e = j.at("expect");
      reject_unknown(e,
                     {"limit_class", "by_limit_t", "relative_tolerance", "spatial_tolerance",
                      "zero_mass", "min_gap_order", "class_below_epsilon"},
                     "expect");
      auto& x = cfg.expect;
      if (e.contains("limit_class")) {
        try {
          x.limit_class = causal_class_from_string(e.at("limit_class").get<std::string>());
        } catch (const DomainError& err) {
          fail(std::string("expect.limit_class: ") + err.what());
        }
      }
      if (e.contains("by_limit_t")) x.by_limit_t = as_number(e.at("by_limit_t"), "expect.by_limit_t");
      read_positive(e, "expect", "relative_tolerance", x.relative_tolerance);
      read_positive(e, "expect", "spatial_tolerance", x.spatial_tolerance);
      if (e.contains("zero_mass")) {
        if (!e.at("zero_mass").is_boolean()) fail("expect.zero_mass: expected a boolean");
        x.zero_mass = e.at("zero_mass").get<bool>();
      }
      if (e.contains("class_below_epsilon")) {
        x.class_below_epsilon = as_number(e.at("class_below_epsilon"), "expect.class_below_epsilon");
      }
      if (e.contains("min_gap_order")) x.min_gap_order = as_number(e.at("min_gap_order"), "expect.min_gap_order");
    }
  } catch (const json::exception& e) {
    fail(source + ": " + e.what());
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace qlmass
