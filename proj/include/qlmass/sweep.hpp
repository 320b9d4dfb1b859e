#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlmass/fit.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quasilocal.hpp"
#include "qlmass/sweep_config.hpp"

namespace qlmass {

/// Results and diagnostics for one coordinate sphere of the exhaustion.
struct EpsilonRecord {
  double epsilon = 0.0;
  bool ok = false;
  std::string error;
  MassResult mass;
  double alpha = 0.0;              // alpha used for the alpha-mass (0 if none)
  double area = 0.0;
  double H_min = 0.0, H_max = 0.0;
  double K_min = 0.0, K_max = 0.0;
  double H_deviation = 0.0;        // max |2 cosh eps - H|
  double H0_deviation = 0.0;       // max |H0 - 2 cosh eps|
  double K_deviation = 0.0;        // max |K - sinh^2 eps|
  double isometry_residual = 0.0;
  double hyperboloid_residual = 0.0;
  double minkowski_residual = 0.0; // Minkowski-type identity, reference spinor
  double laplacian_term = 0.0;     // int Lap F / (H + 2) dSigma, reference spinor
  double max_norm = 0.0;           // max F over the surface
  double hat_by_gap = 0.0;         // |m_hat - m_BY|_inf
};

struct ConePairing {
  double max_pairing = 0.0;  // sup over eta on the t = 1 cone slice of <<v, eta>>
  double min_pairing = 0.0;  // inf of the same
  CausalClass tag = CausalClass::zero;
};

/**
 Pairs v with a Fibonacci point set of n directions on the t = 1 slice of
 the future cone, then refines the extremes at the maximizing and
 minimizing directions. The tag is derived from the two extremes alone,
 using the tolerance of causal_classify.
*/
ConePairing cone_pairing_report(const MinkowskiVector& v, int n_samples,
                                std::optional<double> tol = std::nullopt);

/// n points of a Fibonacci lattice on the unit sphere.
std::vector<std::array<double, 3>> fibonacci_sphere(int n);

struct FittedVector {
  std::array<LimitFit, 4> components;
  MinkowskiVector limit;
  MinkowskiVector standard_error;
  CausalClass tag = CausalClass::zero;
  ConePairing cone;
  bool tags_agree = true;
};

struct MassSweepRecord {
  std::string family;
  std::string source;
  int n_theta = 0, n_phi = 0;
  MinkowskiVector wang_mass;
  std::vector<EpsilonRecord> records;  // sorted by increasing epsilon
  std::vector<int> fit_indices;        // records used for the fits
  std::optional<FittedVector> by_limit;
  std::optional<FittedVector> hat_limit;
  std::optional<FittedVector> alpha_limit;
  std::optional<double> gap_order;     // decay order of |m_hat - m_BY|
  bool gap_monotone = true;
  bool tags_agree = true;              // causal_classify vs cone pairing, every vector
  std::vector<std::string> failures;   // asserted criteria that did not hold
  bool passed() const { return failures.empty(); }
};

/// Runs every epsilon concurrently and merges the results by epsilon.
MassSweepRecord run_sweep(const SweepConfig& cfg);

/// Fits each component of per-epsilon vectors over the given records.
FittedVector fit_vector(const std::vector<double>& eps, const std::vector<MinkowskiVector>& v,
                        int eta_samples, std::optional<double> tol);

struct IdentityCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::string family;
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

/// Spinor and surface-geometry property suite on the configured family.
VerifyReport verify_identities(const SweepConfig& cfg);

}  // namespace qlmass
