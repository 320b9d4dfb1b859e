#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "qlmass/ah_metric.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quadrature_grid.hpp"

namespace qlmass {

/**
 Rotationally symmetric sphere metric E(theta) dtheta^2 + G(theta) dphi^2,
 given through G_reduced = G / sin^2(theta) so that both functions are
 smooth in x = cos(theta) up to the poles.
*/
struct RevolutionMetric {
  std::function<double(double theta)> E;
  std::function<double(double theta)> G_reduced;
};

struct EmbedOptions {
  int branch = +1;                   // +1 puts the north pole at positive x3
  double tolerance = 1e-11;          // local error control of the integrator
  int interpolation_nodes = 64;      // Chebyshev samples of the metric functions
  double residual_tolerance = 1e-6;  // accepted relative isometry residual
};

/**
 Profile of a surface of revolution in the hyperboloid model,
   X(theta, phi) = (f cos phi, f sin phi, u, w),  w = sqrt(1 + f^2 + u^2),
 sampled at the theta-nodes of a grid together with first and second
 theta-derivatives.
*/
struct RevolutionProfile {
  int branch = +1;
  std::vector<double> theta;
  std::vector<double> f, u, w;
  std::vector<double> f_t, u_t, w_t;
  std::vector<double> f_tt, u_tt, w_tt;
  std::vector<double> E_target, G_target;
  /// max|E~ - E| / max E + max|G~ - G| / max G with E~ = f_t^2 + u_t^2 - w_t^2
  /// recomputed from u by spectral differentiation.
  double isometry_residual = 0.0;
  /// max |<<X,X>> + 1|
  double hyperboloid_residual = 0.0;
};

/// Per-node position, inward unit normal and mean curvature of a surface in H^3.
struct EmbeddedSurface {
  double epsilon = 0.0;
  std::vector<MinkowskiVector> X;
  std::vector<MinkowskiVector> normal;
  std::vector<double> H0;
  double isometry_residual = 0.0;
  double hyperboloid_residual = 0.0;
};

/// Geodesic sphere of radius R centered at (0,0,0,1), evaluated in closed form.
EmbeddedSurface embed_round(double radius, const QuadratureGrid& grid);

/**
 Solves for u with the metric matched: integrates in x = cos(theta) from
 the north pole, which removes the coordinate singularity, then fixes the
 axial boost so that the integral of u f dtheta vanishes. Throws
 EmbeddingError if the discriminant is negative or the residual exceeds
 the declared tolerance.
*/
RevolutionProfile embed_revolution(const RevolutionMetric& metric, const QuadratureGrid& grid,
                                   const EmbedOptions& options = {});

/// H0 = k1 + k2 per theta-node, positive on geodesic spheres.
std::vector<double> mean_curvature_h0(const RevolutionProfile& profile);

/// Inward unit normal per theta-node in the (f, u, w) half-plane.
struct ProfileNormal {
  std::vector<double> a, b, d;  // nu = (a cos phi, a sin phi, b, d)
};
ProfileNormal profile_normal(const RevolutionProfile& profile);

EmbeddedSurface embedded_surface(const RevolutionProfile& profile, const QuadratureGrid& grid,
                                 double epsilon = 0.0);

/// Induced metric of the coordinate sphere rho = epsilon as a revolution metric.
RevolutionMetric coordinate_sphere_metric(const AHFamily& family, double epsilon);

EmbeddedSurface embed_coordinate_sphere(const AHFamily& family, double epsilon,
                                        const QuadratureGrid& grid,
                                        const EmbedOptions& options = {});

/// X -> Lambda X and nu -> Lambda nu; H0 and residuals are unchanged.
EmbeddedSurface boost_surface(const LorentzMap& map, const EmbeddedSurface& surface);

/// CSV with columns theta,f,u,w,H0.
void write_profile_csv(std::ostream& out, const RevolutionProfile& profile);

}  // namespace qlmass
