#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlmass/legendre_series.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quadrature_grid.hpp"

namespace qlmass {

// Asymptotically hyperbolic metrics in collar form
//
//   g = sinh^{-2}(rho) (d rho^2 + h_rho),   h_rho = h0 + rho^3/3 h + e,
//
// with h0 the unit round metric on S^2. Every family shipped here has a
// conformal collar, h_rho = phi(rho, theta) h0, so coordinate spheres
// are surfaces of revolution.

struct Hyperbolic {};

/// Static form dr^2 / V + r^2 h0, V = 1 + r^2 - 2m/r.
struct AdSSchwarzschild {
  double mass = 0.0;
};

/// Conformal remainder e = rho^power * profile(theta) * h0.
struct ConformalRemainder {
  LegendreSeries profile;
  double power = 4.0;
};

/// h_rho = (1 + rho^3 psi(theta) / 3 + e(rho, theta)) h0.
struct PerturbedRound {
  LegendreSeries psi;
  std::optional<ConformalRemainder> remainder;
};

using FamilyVariant = std::variant<Hyperbolic, AdSSchwarzschild, PerturbedRound>;

class CollarSlice;

/// Immutable descriptor of an asymptotically hyperbolic metric near infinity.
class AHFamily {
 public:
  static constexpr double kDefaultRhoMax = 0.5;

  static AHFamily hyperbolic(double rho_max = kDefaultRhoMax);
  static AHFamily ads_schwarzschild(double mass, double rho_max = kDefaultRhoMax);
  static AHFamily perturbed_round(LegendreSeries psi,
                                  std::optional<ConformalRemainder> remainder = std::nullopt,
                                  double rho_max = kDefaultRhoMax);

  const FamilyVariant& variant() const { return variant_; }
  double rho_max() const { return rho_max_; }
  std::string name() const;

  /// Throws DomainError unless 0 < rho <= rho_max.
  void check_rho(double rho) const;

  /// Conformal factor of h_rho at fixed rho; see CollarSlice.
  CollarSlice slice(double rho) const;

 private:
  AHFamily(FamilyVariant v, double rho_max);
  FamilyVariant variant_;
  double rho_max_;
};

/**
 h_rho = phi(theta) h0 at one value of rho, together with the exact
 rho-derivatives of phi. For AdS-Schwarzschild the collar radius r(rho)
 is solved once on construction.
*/
class CollarSlice {
 public:
  CollarSlice(const AHFamily& family, double rho);

  double rho() const { return rho_; }
  double phi(double theta) const;
  double dphi_drho(double theta) const;
  double d2phi_drho2(double theta) const;

  /// Static-coordinate radius for AdS-Schwarzschild, 1/sinh(rho) otherwise.
  double area_radius() const { return r_; }

 private:
  AHFamily family_;
  double rho_;
  double r_;
};

/// Components of h_rho and g at every node of a grid.
struct CollarSample {
  double rho = 0.0;
  std::vector<double> h_thth, h_thph, h_phph;
  std::vector<double> g_rhorho, g_thth, g_thph, g_phph;
};

CollarSample metric_at(const AHFamily& family, double rho, const QuadratureGrid& grid);

/**
 Collar radius r(rho) of AdS-Schwarzschild: the solution of
   -log tanh(rho/2) = log(2r) + int_0^{1/r} (1 - (1 + x^2 - 2 m x^3)^{-1/2}) dx / x,
 which is dr/drho = -sqrt(V)/sinh(rho) normalized so that r sinh(rho) -> 1
 at infinity. m = 0 returns 1/sinh(rho) exactly.
*/
double ads_collar_transform(double mass, double rho);

/// Same equation's residual at r (for checking the root).
double ads_collar_residual(double mass, double rho, double r);

/// Mass aspect tensor h sampled on a grid (h_thph is zero for the shipped families).
struct MassAspect {
  std::vector<double> h_thth, h_thph, h_phph;
  std::vector<double> trace;  // tr_{h0} h = h_thth + h_phph / sin^2 theta
};

struct CollarFit {
  double trace = 0.0;       // fitted tr_{h0} h (constant over S^2)
  double residual = 0.0;    // rms residual of the fit, relative to |trace|
};

/**
 Fit the rho^3-coefficient of (h_rho - h0) for AdS-Schwarzschild from the
 collar transform, over rho in [rho_lo, rho_hi] (9 equispaced samples).
*/
CollarFit ads_trace_fit(double mass, double rho_lo = 0.02, double rho_hi = 0.1);

MassAspect mass_aspect(const AHFamily& family, const QuadratureGrid& grid);

/// (1/16pi) (int x tr h dmu, int tr h dmu), x = omega(theta, phi).
MinkowskiVector wang_mass(const MassAspect& aspect, const QuadratureGrid& grid);

/// Scalar curvature of g at (rho, theta).
double scalar_curvature(const AHFamily& family, double rho, double theta);

struct RemainderCheck {
  bool ok = true;
  double max_ratio = 0.0;  // max of |e|, |rho de/drho|, |de/dtheta|, |d2e/dtheta2| over rho^4
};

/// Samples the remainder at 20 log-spaced rho in [rho_min, rho_max].
RemainderCheck validate_remainder(const AHFamily& family, double bound, double rho_min,
                                  double rho_max);

}  // namespace qlmass
