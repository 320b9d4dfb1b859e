#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qlmass/embed_h3.hpp"
#include "qlmass/lorentz.hpp"
#include "qlmass/quadrature_grid.hpp"
#include "qlmass/sphere_geometry.hpp"

namespace qlmass {

struct MassResult {
  double epsilon = 0.0;
  MinkowskiVector m_by;
  MinkowskiVector m_hat;
  std::optional<MinkowskiVector> m_alpha;
  std::optional<double> euclid_by;
  CausalClass by_class = CausalClass::zero;
  CausalClass hat_class = CausalClass::zero;
  std::optional<CausalClass> alpha_class;
};

/// Pointwise lower bound on H required by hat_mass and mainhyp_functional.
inline constexpr double kHatMassMargin = 1e-8;

/// (1/8pi) int (H0 - H) X dSigma
MinkowskiVector by_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                        const QuadratureGrid& grid);

/// (1/8pi) int (H0^2 - H^2) / (H + 2) X dSigma; throws DomainError unless H > -2 + margin.
MinkowskiVector hat_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                         const QuadratureGrid& grid);

/// int (H - H0) (x, alpha t) dSigma, without a 1/8pi factor.
MinkowskiVector shitam_alpha_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                                  const QuadratureGrid& grid, double alpha);

/// coth R1 + sqrt(sinh^2 R2 / sinh^2 R1 - 1) / sinh R1 for 0 < R1 <= R2.
double alpha_from_radii(double r1, double r2);

/// (1/8pi) int (H0 - H) dSigma for a surface in R^3 with externally supplied H0.
double euclid_by_mass(const SurfaceSample& surf, std::span<const double> H0,
                      const QuadratureGrid& grid);

/// int (H0^2 - H^2) / (H + 2) F dSigma + 4 int Lap(F) / (H + 2) dSigma
double mainhyp_functional(const SurfaceSample& surf, const EmbeddedSurface& emb,
                          std::span<const double> F, const QuadratureGrid& grid);

/// The second integral alone: int Lap(F) / (H + 2) dSigma.
double laplacian_term(const SurfaceSample& surf, std::span<const double> F,
                      const QuadratureGrid& grid);

MassResult mass_result(const SurfaceSample& surf, const EmbeddedSurface& emb,
                       const QuadratureGrid& grid, std::optional<double> alpha = std::nullopt);

}  // namespace qlmass
