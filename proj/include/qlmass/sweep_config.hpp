#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlmass/ah_metric.hpp"
#include "qlmass/lorentz.hpp"

namespace qlmass {

struct SweepTolerances {
  std::optional<double> causal;      // absolute; unset means 1e-9 (1 + |v|_inf)
  double ode = 1e-11;
  double isometry = 1e-6;
  double hyperboloid = 1e-9;
  double identity = 1e-7;            // Minkowski-type identity on geodesic spheres
  double zero_mass = 1e-8;
  double spinor = 1e-12;
  double geodesic = 1e-10;
};

/// Optional assertions checked after a sweep; each failing item sets exit code 2.
struct SweepExpectations {
  std::optional<CausalClass> limit_class;
  std::optional<double> by_limit_t;
  std::optional<double> class_below_epsilon;  // per-epsilon m_BY tags must equal limit_class
  double relative_tolerance = 0.01;
  double spatial_tolerance = 1e-6;
  bool zero_mass = false;
  std::optional<double> min_gap_order;
};

struct SweepConfig {
  std::string source;  // file name or "<inline>"
  AHFamily family = AHFamily::hyperbolic();
  std::vector<double> epsilons;  // strictly decreasing
  int n_theta = 64;
  int n_phi = 4;
  int branch = 1;
  int interpolation_nodes = 64;
  SpinorParameter spinor{1.0, 0.0};
  int eta_samples = 1024;
  std::optional<double> alpha;  // fixed alpha for the alpha-mass
  bool alpha_auto = false;      // alpha from the radii of the enclosing geodesic spheres
  SweepTolerances tolerances;
  std::string output_dir = "out";
  std::string output_prefix = "sweep";
  SweepExpectations expect;
};

/// eps0 * ratio^k for k = 0..count-1.
std::vector<double> geometric_schedule(double eps0, double ratio, int count);

/// Parses JSON text; throws ConfigError with a description of the first problem.
SweepConfig parse_config(const std::string& text, const std::string& source = "<inline>");

SweepConfig load_config(const std::string& path);

/// Default sweep over a family: eps0 = 0.2, ratio = 1/sqrt(2), 8 points, 64 x 4 grid.
SweepConfig default_config(const AHFamily& family);

}  // namespace qlmass
