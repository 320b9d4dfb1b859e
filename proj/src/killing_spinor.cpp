#include "qlmass/killing_spinor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "qlmass/errors.hpp"
#include "qlmass/fit.hpp"

namespace qlmass {

SpinorValue spinor_at(const SpinorParameter& z, double r, double theta, double phi) {
  using namespace std::complex_literals;
  const std::complex<double> ep = std::exp(0.5i * phi);
  const std::complex<double> em = std::conj(ep);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::complex<double> a = (z.z1 * ep * c + z.z2 * em * s) * std::exp(0.5 * r);
  const std::complex<double> b = -(z.z1 * ep * s - z.z2 * em * c) * std::exp(-0.5 * r);
  return {a, b};
}

MinkowskiVector spinor_chart_point(double r, double theta, double phi) {
  const double sh = std::sinh(r);
  const double st = std::sin(theta);
  return {sh * std::cos(theta), sh * st * std::cos(phi), sh * st * std::sin(phi), std::cosh(r)};
}

KillingNormField::KillingNormField(const SpinorParameter& z) : z_(z), eta_(hopf_eta(z)) {
  if (z.norm_squared() == 0.0) throw DomainError("KillingNormField: z must be nonzero");
}

double norm_field_at(const KillingNormField& field, const MinkowskiVector& X) {
  if (std::abs(lorentz_inner(X, X) + 1.0) > 1e-8 || X.t < 0.0) {
    throw DomainError("norm_field_at: point is not on the hyperboloid");
  }
  return field(X);
}

std::vector<double> norm_field_values(const KillingNormField& field, const EmbeddedSurface& emb) {
  std::vector<double> F(emb.X.size());
  for (std::size_t k = 0; k < F.size(); ++k) F[k] = field(emb.X[k]);
  return F;
}

MinkowskiVector norm_field_gradient(const KillingNormField& field, const MinkowskiVector& X) {
  return -field.eta() + field(X) * X;
}

double gradient_identity_residual(const KillingNormField& field, const MinkowskiVector& X) {
  const MinkowskiVector g = norm_field_gradient(field, X);
  const double F = field(X);
  return std::abs(lorentz_inner(g, g) - F * F);
}

GeodesicFit geodesic_norm_check(const KillingNormField& field, const MinkowskiVector& X0,
                                const MinkowskiVector& V, std::span<const double> t_samples) {
  constexpr double tol = 1e-8;
  if (std::abs(lorentz_inner(X0, X0) + 1.0) > tol || X0.t < 0.0 ||
      std::abs(lorentz_inner(V, V) - 1.0) > tol || std::abs(lorentz_inner(X0, V)) > tol) {
    throw DomainError("geodesic_norm_check: not a unit-speed geodesic of the hyperboloid");
  }
  const std::set<double> distinct(t_samples.begin(), t_samples.end());
  if (distinct.size() < 2) throw DomainError("geodesic_norm_check: need two distinct samples");

  const auto n = static_cast<Eigen::Index>(t_samples.size());
  Eigen::MatrixXd M(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = t_samples[i];
    M(i, 0) = std::exp(t);
    M(i, 1) = std::exp(-t);
    y(i) = field(std::cosh(t) * X0 + std::sinh(t) * V);
  }
  const Eigen::Vector2d c = M.colPivHouseholderQr().solve(y);
  GeodesicFit fit{c(0), c(1), 0.0};
  const Eigen::VectorXd r = M * c - y;
  for (Eigen::Index i = 0; i < n; ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(r(i)) / std::max(1.0, std::abs(y(i))));
  }
  return fit;
}

double minkowski_identity_residual(const KillingNormField& field, const SurfaceSample& surf,
                                   const EmbeddedSurface& emb, const QuadratureGrid& grid) {
  if (emb.normal.size() != emb.X.size() || emb.X.size() != static_cast<std::size_t>(grid.size())) {
    throw DomainError("minkowski_identity_residual: embedding carries no normal data");
  }
  const std::vector<double> F = norm_field_values(field, emb);
  const std::vector<double> lap = surface_laplacian(surf, F, grid);
  double worst = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const double nuF = -lorentz_inner(emb.normal[k], field.eta());
    worst = std::max(worst, std::abs(lap[k] - 2.0 * F[k] - emb.H0[k] * nuF));
  }
  return worst;
}

RefinementStudy minkowski_refinement_study(const KillingNormField& field, const AHFamily& family,
                                           double eps, std::span<const int> n_theta, int n_phi,
                                           double floor, double ceiling,
                                           const EmbedOptions& options) {
  if (n_theta.size() < 2) throw DomainError("minkowski_refinement_study: need two grids");
  if (!std::is_sorted(n_theta.begin(), n_theta.end())) {
    throw DomainError("minkowski_refinement_study: n_theta ladder must increase");
  }
  RefinementStudy out;
  out.n_theta.assign(n_theta.begin(), n_theta.end());
  for (int n : n_theta) {
    const QuadratureGrid g(n, n_phi);
    out.residuals.push_back(minkowski_identity_residual(
        field, coordinate_sphere(family, eps, g), embed_coordinate_sphere(family, eps, g, options), g));
  }
  const auto& r = out.residuals;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] <= floor) {
      out.converged_at = static_cast<int>(k);
      break;
    }
  }
  if (out.converged_at < 2) return out;
  bool ok = true;
  for (int k = 1; k <= out.converged_at; ++k) ok = ok && r[k] < r[k - 1];
  for (std::size_t k = out.converged_at; k < r.size(); ++k) ok = ok && r[k] <= ceiling;
  out.spectral = ok;
  return out;
}

GrowthFit exhaustion_norm_growth(const KillingNormField& field, const AHFamily& family,
                                 std::span<const double> epsilons, const QuadratureGrid& grid,
                                 const EmbedOptions& options) {
  if (epsilons.size() < 2) throw DomainError("exhaustion_norm_growth: need at least two epsilons");
  GrowthFit out;
  std::vector<double> log_eps, log_f;
  for (double eps : epsilons) {
    const EmbeddedSurface emb = embed_coordinate_sphere(family, eps, grid, options);
    const std::vector<double> F = norm_field_values(field, emb);
    const double fmax = *std::max_element(F.begin(), F.end());
    out.max_values.push_back(fmax);
    log_eps.push_back(std::log(eps));
    log_f.push_back(std::log(fmax));
  }
  out.order = -linear_slope(log_eps, log_f);
  return out;
}

}  // namespace qlmass
