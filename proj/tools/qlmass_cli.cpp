// Command-line driver for coordinate-exhaustion sweeps.
//
//   qlmass sweep  <config.json>   run the sweep, write CSV and summary JSON
//   qlmass verify <config.json>   spinor and surface identity suite
//   qlmass embed  <config.json>   dump embedding profiles per epsilon
//   qlmass report <summary.json>  print a stored sweep summary
//
// Exit codes: 0 all asserted criteria pass, 2 identity failure, 3 config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlmass/embed_h3.hpp"
#include "qlmass/errors.hpp"
#include "qlmass/report_io.hpp"
#include "qlmass/sweep.hpp"
#include "qlmass/sweep_config.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 2;
constexpr int kExitConfigError = 3;

qlmass::SweepConfig load(const std::string& path, const std::string& output_dir) {
  qlmass::SweepConfig cfg = qlmass::load_config(path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  return cfg;
}

int cmd_sweep(const std::string& path, const std::string& output_dir) {
  const qlmass::SweepConfig cfg = load(path, output_dir);
  const qlmass::MassSweepRecord rec = qlmass::run_sweep(cfg);
  const qlmass::WrittenFiles files = qlmass::write_sweep_outputs(cfg, rec);
  bool passed = false;
  std::cout << qlmass::describe_summary(qlmass::sweep_summary_json(rec), passed);
  std::cout << "wrote " << files.csv << " and " << files.summary << '\n';
  return passed ? kExitPass : kExitIdentityFailure;
}

int cmd_verify(const std::string& path, const std::string& output_dir) {
  const qlmass::SweepConfig cfg = load(path, output_dir);
  const qlmass::VerifyReport rep = qlmass::verify_identities(cfg);
  for (const auto& c : rep.checks) {
    std::printf("%-32s %s  value=%-12.4g tol=%-10.3g %s\n", c.name.c_str(),
                c.passed ? "PASS" : "FAIL", c.value, c.tolerance, c.detail.c_str());
  }
  std::filesystem::create_directories(cfg.output_dir);
  const auto out =
      std::filesystem::path(cfg.output_dir) / (cfg.output_prefix + "_verify.json");
  std::ofstream(out) << qlmass::verify_report_json(rep) << '\n';
  std::cout << "wrote " << out.string() << '\n';
  return rep.passed() ? kExitPass : kExitIdentityFailure;
}

int cmd_embed(const std::string& path, const std::string& output_dir) {
  const qlmass::SweepConfig cfg = load(path, output_dir);
  const qlmass::QuadratureGrid grid(cfg.n_theta, cfg.n_phi);
  qlmass::EmbedOptions opts;
  opts.branch = cfg.branch;
  opts.tolerance = cfg.tolerances.ode;
  opts.interpolation_nodes = cfg.interpolation_nodes;
  opts.residual_tolerance = cfg.tolerances.isometry;
  std::filesystem::create_directories(cfg.output_dir);
  int status = kExitPass;
  for (std::size_t k = 0; k < cfg.epsilons.size(); ++k) {
    const double eps = cfg.epsilons[k];
    try {
      const auto profile = qlmass::embed_revolution(
          qlmass::coordinate_sphere_metric(cfg.family, eps), grid, opts);
      const auto out = std::filesystem::path(cfg.output_dir) /
                       (cfg.output_prefix + "_profile_" + std::to_string(k) + ".csv");
      std::ofstream csv(out);
      qlmass::write_profile_csv(csv, profile);
      std::printf("eps=%-10.6g isometry=%-10.3g hyperboloid=%-10.3g -> %s\n", eps,
                  profile.isometry_residual, profile.hyperboloid_residual, out.string().c_str());
    } catch (const qlmass::EmbeddingError& e) {
      std::printf("eps=%-10.6g embedding failed: %s\n", eps, e.what());
      status = kExitIdentityFailure;
    }
  }
  return status;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qlmass::ConfigError("cannot open record file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  bool passed = false;
  std::cout << qlmass::describe_summary(ss.str(), passed);
  return passed ? kExitPass : kExitIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-local mass sweeps over coordinate exhaustions"};
  app.require_subcommand(1);
  std::string config_path, output_dir, record_path;

  auto* sweep = app.add_subcommand("sweep", "Run an epsilon sweep and fit the limits");
  sweep->add_option("config", config_path, "JSON config file")->required();
  sweep->add_option("-o,--output-dir", output_dir, "Override output.dir");

  auto* verify = app.add_subcommand("verify", "Run the identity suite on the configured family");
  verify->add_option("config", config_path, "JSON config file")->required();
  verify->add_option("-o,--output-dir", output_dir, "Override output.dir");

  auto* embed = app.add_subcommand("embed", "Write embedding profiles for every epsilon");
  embed->add_option("config", config_path, "JSON config file")->required();
  embed->add_option("-o,--output-dir", output_dir, "Override output.dir");

  auto* report = app.add_subcommand("report", "Print a sweep summary file");
  report->add_option("record", record_path, "Summary JSON written by sweep")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (*sweep) return cmd_sweep(config_path, output_dir);
    if (*verify) return cmd_verify(config_path, output_dir);
    if (*embed) return cmd_embed(config_path, output_dir);
    if (*report) return cmd_report(record_path);
  } catch (const qlmass::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIdentityFailure;
  }
  return kExitConfigError;
}
