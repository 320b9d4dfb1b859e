#pragma once

#include <span>
#include <vector>

#include "qlmass/ah_metric.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quadrature_grid.hpp"

namespace qlmass {

/**
 Intrinsic and extrinsic geometry of a sphere sampled on a QuadratureGrid.

 The induced metric is E dtheta^2 + 2F dtheta dphi + G dphi^2. Besides E
 and G we keep the pole-regular quantities G / sin^2(theta) and
 sqrt(EG - F^2) / sin(theta); the latter is the density of dSigma against
 the grid measure dx dphi. H is the mean curvature with the convention
 H = k1 + k2 and H > 0 on geodesic spheres.
*/
struct SurfaceSample {
  double epsilon = 0.0;
  std::vector<double> E, F, G;
  std::vector<double> G_reduced;     // G / sin^2 theta
  std::vector<double> area_element;  // sqrt(EG - F^2)
  std::vector<double> measure;       // sqrt(EG - F^2) / sin theta
  std::vector<double> H;
  std::vector<double> K;
};

/**
 Rotationally symmetric surface from per-ring data (size n_theta):
 E, G / sin^2 theta and H. K is computed from the metric by the Brioschi
 formula with spectral differentiation in cos(theta).
*/
SurfaceSample revolution_surface(std::span<const double> E_ring,
                                 std::span<const double> G_reduced_ring,
                                 std::span<const double> H_ring, const QuadratureGrid& grid,
                                 double epsilon = 0.0);

/// Coordinate sphere rho = epsilon of an asymptotically hyperbolic family.
SurfaceSample coordinate_sphere(const AHFamily& family, double epsilon, const QuadratureGrid& grid);

/// Geodesic sphere of radius R in H^3 (metric sinh^2 R h0, H = 2 coth R).
SurfaceSample geodesic_sphere(double radius, const QuadratureGrid& grid);

/// Round sphere of radius a with prescribed constant mean curvature.
SurfaceSample round_sphere(double radius, double mean_curvature, const QuadratureGrid& grid);

/// Gauss curvature per ring of E dtheta^2 + G dphi^2 (rotational, F = 0).
std::vector<double> brioschi_curvature(std::span<const double> E_ring,
                                       std::span<const double> G_reduced_ring,
                                       const QuadratureGrid& grid);

double integrate_scalar(const SurfaceSample& surface, std::span<const double> field,
                        const QuadratureGrid& grid);

MinkowskiVector integrate_vector(const SurfaceSample& surface,
                                 std::span<const MinkowskiVector> field,
                                 const QuadratureGrid& grid);

/// min K > -1 + tol: the Gauss curvature condition for embedding into H^3.
bool embeddability_check(const SurfaceSample& surface, double tol = 1e-8);

/**
 Intrinsic Laplace-Beltrami operator of a rotationally symmetric surface
 applied to a per-node field. The field is split into Fourier modes in
 phi; each mode is differentiated spectrally in cos(theta) after removing
 the sin(theta) factor odd modes carry at the poles.
*/
std::vector<double> surface_laplacian(const SurfaceSample& surface, std::span<const double> field,
                                      const QuadratureGrid& grid);

}  // namespace qlmass
