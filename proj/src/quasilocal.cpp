#include "qlmass/quasilocal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

void check_aligned(const SurfaceSample& surf, const EmbeddedSurface& emb,
                   const QuadratureGrid& grid, const char* what) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (surf.H.size() != n || surf.measure.size() != n || emb.X.size() != n ||
      emb.H0.size() != n) {
    throw DomainError(std::string(what) + ": surface, embedding and grid are not node-aligned");
  }
}

void check_h_above_minus_two(const SurfaceSample& surf, const char* what) {
  for (double h : surf.H) {
    if (!(h > -2.0 + kHatMassMargin)) {
      throw DomainError(std::string(what) + ": mean curvature H <= -2 on the surface");
    }
  }
}

}  // namespace

MinkowskiVector by_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                        const QuadratureGrid& grid) {
  check_aligned(surf, emb, grid, "by_mass");
  std::vector<MinkowskiVector> field(grid.size());
  for (int k = 0; k < grid.size(); ++k) field[k] = (emb.H0[k] - surf.H[k]) * emb.X[k];
  return integrate_vector(surf, field, grid) * (1.0 / (8.0 * std::numbers::pi));
}

MinkowskiVector hat_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                         const QuadratureGrid& grid) {
  check_aligned(surf, emb, grid, "hat_mass");
  check_h_above_minus_two(surf, "hat_mass");
  std::vector<MinkowskiVector> field(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double H = surf.H[k];
    const double H0 = emb.H0[k];
    field[k] = ((H0 - H) * (H0 + H) / (H + 2.0)) * emb.X[k];
  }
  return integrate_vector(surf, field, grid) * (1.0 / (8.0 * std::numbers::pi));
}

MinkowskiVector shitam_alpha_mass(const SurfaceSample& surf, const EmbeddedSurface& emb,
                                  const QuadratureGrid& grid, double alpha) {
  check_aligned(surf, emb, grid, "shitam_alpha_mass");
  if (!(alpha >= 1.0)) throw DomainError("shitam_alpha_mass: alpha must be >= 1");
  std::vector<MinkowskiVector> field(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    MinkowskiVector xa = emb.X[k];
    xa.t *= alpha;
    field[k] = (surf.H[k] - emb.H0[k]) * xa;
  }
  return integrate_vector(surf, field, grid);
}

double alpha_from_radii(double r1, double r2) {
  if (!(r1 > 0.0)) throw DomainError("alpha_from_radii: R1 must be positive");
  if (r1 > r2) throw DomainError("alpha_from_radii: R1 > R2");
  const double s1 = std::sinh(r1);
  const double s2 = std::sinh(r2);
  const double ratio = s2 / s1;
  return std::cosh(r1) / s1 + std::sqrt(std::max(0.0, ratio * ratio - 1.0)) / s1;
}

double euclid_by_mass(const SurfaceSample& surf, std::span<const double> H0,
                      const QuadratureGrid& grid) {
  if (H0.size() != surf.H.size()) {
    throw DomainError("euclid_by_mass: H0 does not match the surface");
  }
  std::vector<double> field(H0.size());
  for (std::size_t k = 0; k < field.size(); ++k) field[k] = H0[k] - surf.H[k];
  return integrate_scalar(surf, field, grid) / (8.0 * std::numbers::pi);
}

double laplacian_term(const SurfaceSample& surf, std::span<const double> F,
                      const QuadratureGrid& grid) {
  check_h_above_minus_two(surf, "laplacian_term");
  const std::vector<double> lap = surface_laplacian(surf, F, grid);
  std::vector<double> field(lap.size());
  for (std::size_t k = 0; k < field.size(); ++k) field[k] = lap[k] / (surf.H[k] + 2.0);
  return integrate_scalar(surf, field, grid);
}

double mainhyp_functional(const SurfaceSample& surf, const EmbeddedSurface& emb,
                          std::span<const double> F, const QuadratureGrid& grid) {
  check_aligned(surf, emb, grid, "mainhyp_functional");
  check_h_above_minus_two(surf, "mainhyp_functional");
  if (F.size() != surf.H.size()) throw DomainError("mainhyp_functional: F does not match grid");
  std::vector<double> field(F.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double H = surf.H[k];
    const double H0 = emb.H0[k];
    field[k] = (H0 - H) * (H0 + H) / (H + 2.0) * F[k];
  }
  return integrate_scalar(surf, field, grid) + 4.0 * laplacian_term(surf, F, grid);
}

MassResult mass_result(const SurfaceSample& surf, const EmbeddedSurface& emb,
                       const QuadratureGrid& grid, std::optional<double> alpha) {
  MassResult r;
  r.epsilon = surf.epsilon;
  r.m_by = by_mass(surf, emb, grid);
  r.m_hat = hat_mass(surf, emb, grid);
  r.by_class = causal_classify(r.m_by);
  r.hat_class = causal_classify(r.m_hat);
  if (alpha) {
    r.m_alpha = shitam_alpha_mass(surf, emb, grid, *alpha);
    r.alpha_class = causal_classify(*r.m_alpha);
  }
  return r;
}

}  // namespace qlmass
