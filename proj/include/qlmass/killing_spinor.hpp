#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "qlmass/ah_metric.hpp"
#include "qlmass/embed_h3.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quadrature_grid.hpp"
#include "qlmass/sphere_geometry.hpp"

namespace qlmass {

using SpinorValue = std::array<std::complex<double>, 2>;

/**
 Imaginary Killing spinor of H^3 in geodesic polar coordinates (r, theta,
 phi) about the origin of the hyperboloid. Components are anti-periodic in
 phi; the squared norm is 2pi-periodic.
*/
SpinorValue spinor_at(const SpinorParameter& z, double r, double theta, double phi);

inline double spinor_norm_squared(const SpinorValue& v) {
  return std::norm(v[0]) + std::norm(v[1]);
}

/**
 The point of the hyperboloid at which spinor_at(z, r, theta, phi) has
 squared norm -<<X, hopf_eta(z)>>. The spinor chart's polar axis is the x1
 axis: X = (sinh r cos theta, sinh r sin theta cos phi,
 sinh r sin theta sin phi, cosh r).
*/
MinkowskiVector spinor_chart_point(double r, double theta, double phi);

/// Squared norm of a Killing spinor as the linear form F(X) = -<<X, eta>>.
class KillingNormField {
 public:
  /// Throws DomainError for z = 0.
  explicit KillingNormField(const SpinorParameter& z);

  const SpinorParameter& parameter() const { return z_; }
  const MinkowskiVector& eta() const { return eta_; }

  /// F(X); does not check X.
  double operator()(const MinkowskiVector& X) const { return -lorentz_inner(X, eta_); }

 private:
  SpinorParameter z_;
  MinkowskiVector eta_;
};

/// -<<X, eta>>; throws DomainError if |<<X,X>> + 1| > 1e-8 or t < 0.
double norm_field_at(const KillingNormField& field, const MinkowskiVector& X);

/// F at every node of an embedded surface.
std::vector<double> norm_field_values(const KillingNormField& field, const EmbeddedSurface& emb);

/// Tangential gradient -eta + F(X) X of F on the hyperboloid at X.
MinkowskiVector norm_field_gradient(const KillingNormField& field, const MinkowskiVector& X);

/// | |grad F|^2 - F^2 | at X.
double gradient_identity_residual(const KillingNormField& field, const MinkowskiVector& X);

struct GeodesicFit {
  double A = 0.0;
  double B = 0.0;
  double max_residual = 0.0;
};

/**
 Least-squares fit of u(t) = F(cosh t X0 + sinh t V) to A e^t + B e^-t.
 Requires <<X0,X0>> = -1, <<V,V>> = 1, <<X0,V>> = 0 (to 1e-8) and at
 least two distinct samples.
*/
GeodesicFit geodesic_norm_check(const KillingNormField& field, const MinkowskiVector& X0,
                                const MinkowskiVector& V, std::span<const double> t_samples);

/// max over nodes of |Lap F - 2F - H0 nu(F)| with nu(F) = -<<nu, eta>>.
double minkowski_identity_residual(const KillingNormField& field, const SurfaceSample& surf,
                                   const EmbeddedSurface& emb, const QuadratureGrid& grid);

struct RefinementStudy {
  std::vector<int> n_theta;
  std::vector<double> residuals;  // minkowski_identity_residual per grid
  int converged_at = -1;          // first index at or below the floor, -1 if never
  bool spectral = false;
};

/**
 Minkowski identity residual of one coordinate sphere on a ladder of
 n_theta values (increasing). Spectral means: at least two ladder steps
 lie above floor, the residual decreases strictly until it first drops to
 the floor, and every finer grid stays within ceiling.
*/
RefinementStudy minkowski_refinement_study(const KillingNormField& field, const AHFamily& family,
                                           double eps, std::span<const int> n_theta, int n_phi,
                                           double floor, double ceiling,
                                           const EmbedOptions& options = {});

struct GrowthFit {
  double order = 0.0;                // p in max F ~ C eps^-p
  std::vector<double> max_values;    // max node value of F per epsilon
};

/// Embeds every coordinate sphere and fits log max F against -log eps.
GrowthFit exhaustion_norm_growth(const KillingNormField& field, const AHFamily& family,
                                 std::span<const double> epsilons, const QuadratureGrid& grid,
                                 const EmbedOptions& options = {});

}  // namespace qlmass
