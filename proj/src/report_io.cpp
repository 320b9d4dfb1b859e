#include "qlmass/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qlmass/errors.hpp"

namespace qlmass {

using nlohmann::json;

namespace {

json vec_json(const MinkowskiVector& v) { return json::array({v.x1, v.x2, v.x3, v.t}); }

// JSON has no NaN or infinity; map them to null.
json num(double d) { return std::isfinite(d) ? json(d) : json(nullptr); }

json fitted_json(const FittedVector& f) {
  json comps = json::array();
  for (const LimitFit& c : f.components) {
    comps.push_back({{"limit", num(c.limit)},
                     {"coefficient", num(c.coefficient)},
                     {"order", num(c.order)},
                     {"limit_se", num(c.limit_se)},
                     {"order_se", num(c.order_se)},
                     {"rms_residual", num(c.rms_residual)},
                     {"order_trusted", c.order_trusted},
                     {"monotone", c.monotone}});
  }
  return {{"limit", vec_json(f.limit)},
          {"standard_error", vec_json(f.standard_error)},
          {"tag", std::string(to_string(f.tag))},
          {"cone_max_pairing", num(f.cone.max_pairing)},
          {"cone_tag", std::string(to_string(f.cone.tag))},
          {"tags_agree", f.tags_agree},
          {"components", comps}};
}

void write_vec(std::ostream& out, const MinkowskiVector& v) {
  out << ',' << v.x1 << ',' << v.x2 << ',' << v.x3 << ',' << v.t;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const MassSweepRecord& record) {
  const auto old_precision = out.precision(17);
  out << "epsilon,ok,mBY_x1,mBY_x2,mBY_x3,mBY_t,mhat_x1,mhat_x2,mhat_x3,mhat_t,"
         "malpha_x1,malpha_x2,malpha_x3,malpha_t,alpha,by_class,hat_class,area,H_min,H_max,"
         "K_min,K_max,H_deviation,H0_deviation,K_deviation,isometry_residual,"
         "hyperboloid_residual,minkowski_residual,laplacian_term,max_norm,hat_by_gap,error\n";
  for (const auto& r : record.records) {
    out << r.epsilon << ',' << (r.ok ? 1 : 0);
    write_vec(out, r.mass.m_by);
    write_vec(out, r.mass.m_hat);
    write_vec(out, r.mass.m_alpha.value_or(MinkowskiVector{}));
    out << ',' << r.alpha << ',' << to_string(r.mass.by_class) << ','
        << to_string(r.mass.hat_class) << ',' << r.area << ',' << r.H_min << ',' << r.H_max << ','
        << r.K_min << ',' << r.K_max << ',' << r.H_deviation << ',' << r.H0_deviation << ','
        << r.K_deviation << ',' << r.isometry_residual << ',' << r.hyperboloid_residual << ','
        << r.minkowski_residual << ',' << r.laplacian_term << ',' << r.max_norm << ','
        << r.hat_by_gap << ',';
    // Keep the error message CSV-safe.
    std::string err = r.error;
    for (char& c : err) {
      if (c == ',' || c == '\n' || c == '"') c = ';';
    }
    out << err << '\n';
  }
  out.precision(old_precision);
}

std::string sweep_summary_json(const MassSweepRecord& record) {
  json j;
  j["family"] = record.family;
  j["config"] = record.source;
  j["grid"] = {{"n_theta", record.n_theta}, {"n_phi", record.n_phi}};
  j["wang_mass"] = vec_json(record.wang_mass);
  json eps = json::array();
  for (const auto& r : record.records) eps.push_back(r.epsilon);
  j["epsilons"] = eps;
  json used = json::array();
  for (int i : record.fit_indices) used.push_back(record.records[i].epsilon);
  j["fit_epsilons"] = used;
  if (record.by_limit) j["m_by_limit"] = fitted_json(*record.by_limit);
  if (record.hat_limit) j["m_hat_limit"] = fitted_json(*record.hat_limit);
  if (record.alpha_limit) j["m_alpha_limit"] = fitted_json(*record.alpha_limit);
  j["gap_order"] = record.gap_order ? num(*record.gap_order) : json(nullptr);
  j["gap_monotone"] = record.gap_monotone;
  j["tags_agree"] = record.tags_agree;
  j["failures"] = record.failures;
  j["passed"] = record.passed();
  return j.dump(2);
}

std::string verify_report_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", num(c.value)},
                      {"tolerance", num(c.tolerance)},
                      {"detail", c.detail}});
  }
  json j{{"family", report.family}, {"checks", checks}, {"passed", report.passed()}};
  return j.dump(2);
}

WrittenFiles write_sweep_outputs(const SweepConfig& cfg, const MassSweepRecord& record) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
  WrittenFiles files;
  files.csv = (fs::path(cfg.output_dir) / (cfg.output_prefix + ".csv")).string();
  files.summary = (fs::path(cfg.output_dir) / (cfg.output_prefix + "_summary.json")).string();
  std::ofstream csv(files.csv);
  if (!csv) throw Error("cannot write '" + files.csv + "'");
  write_sweep_csv(csv, record);
  std::ofstream sum(files.summary);
  if (!sum) throw Error("cannot write '" + files.summary + "'");
  sum << sweep_summary_json(record) << '\n';
  return files;
}

std::string describe_summary(const std::string& json_text, bool& passed) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("record file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("passed")) {
    throw ConfigError("record file is not a sweep summary");
  }
  passed = j.at("passed").get<bool>();
  std::ostringstream os;
  os.precision(10);
  os << "family      " << j.value("family", std::string("?")) << '\n';
  auto show_vec = [&](const char* label, const json& v) {
    os << label;
    for (const auto& c : v) os << ' ' << (c.is_null() ? std::string("nan") : c.dump());
    os << '\n';
  };
  if (j.contains("wang_mass")) show_vec("wang mass  ", j.at("wang_mass"));
  for (const char* key : {"m_by_limit", "m_hat_limit", "m_alpha_limit"}) {
    if (!j.contains(key)) continue;
    const json& f = j.at(key);
    os << key << '\n';
    show_vec("  limit    ", f.at("limit"));
    show_vec("  std err  ", f.at("standard_error"));
    os << "  tag       " << f.at("tag").get<std::string>() << " (cone: "
       << f.at("cone_tag").get<std::string>() << ")\n";
  }
  if (j.contains("gap_order") && !j.at("gap_order").is_null()) {
    os << "gap order   " << j.at("gap_order").get<double>() << '\n';
  }
  for (const auto& f : j.value("failures", json::array())) {
    os << "FAILURE     " << f.get<std::string>() << '\n';
  }
  os << (passed ? "PASSED" : "FAILED") << '\n';
  return os.str();
}

}  // namespace qlmass
