#include "qlmass/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

void require_ring_size(std::size_t n, const QuadratureGrid& grid, const char* what) {
  if (static_cast<int>(n) != grid.n_theta()) {
    throw DomainError(std::string(what) + ": expected one value per theta ring");
  }
}

void require_node_size(std::size_t n, const QuadratureGrid& grid, const char* what) {
  if (static_cast<int>(n) != grid.size()) {
    throw DomainError(std::string(what) + ": field size does not match grid");
  }
}

}  // namespace

std::vector<double> brioschi_curvature(std::span<const double> E_ring,
                                       std::span<const double> G_reduced_ring,
                                       const QuadratureGrid& grid) {
  require_ring_size(E_ring.size(), grid, "brioschi_curvature");
  require_ring_size(G_reduced_ring.size(), grid, "brioschi_curvature");
  const int n = grid.n_theta();
  const auto& interp = grid.theta_interpolant();

  // With x = cos theta and G = (1 - x^2) q^2, K = W_x / (sqrt(E) q) where
  // W = (x q - (1 - x^2) q_x) / sqrt(E). Both factors are smooth at the poles.
  std::vector<double> q(n), sqrtE(n);
  for (int i = 0; i < n; ++i) {
    if (!(E_ring[i] > 0.0) || !(G_reduced_ring[i] > 0.0)) {
      throw DomainError("brioschi_curvature: metric is not positive definite");
    }
    q[i] = std::sqrt(G_reduced_ring[i]);
    sqrtE[i] = std::sqrt(E_ring[i]);
  }
  const std::vector<double> qx = interp.differentiate(q);
  std::vector<double> W(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.cos_theta(i);
    W[i] = (x * q[i] - (1.0 - x * x) * qx[i]) / sqrtE[i];
  }
  const std::vector<double> Wx = interp.differentiate(W);
  std::vector<double> K(n);
  for (int i = 0; i < n; ++i) K[i] = Wx[i] / (sqrtE[i] * q[i]);
  return K;
}

SurfaceSample revolution_surface(std::span<const double> E_ring,
                                 std::span<const double> G_reduced_ring,
                                 std::span<const double> H_ring, const QuadratureGrid& grid,
                                 double epsilon) {
  require_ring_size(H_ring.size(), grid, "revolution_surface");
  const std::vector<double> K_ring = brioschi_curvature(E_ring, G_reduced_ring, grid);

  SurfaceSample s;
  s.epsilon = epsilon;
  const int n = grid.size();
  s.E.resize(n);
  s.F.assign(n, 0.0);
  s.G.resize(n);
  s.G_reduced.resize(n);
  s.area_element.resize(n);
  s.measure.resize(n);
  s.H.resize(n);
  s.K.resize(n);
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double sn = grid.sin_theta(i);
    const double m = std::sqrt(E_ring[i] * G_reduced_ring[i]);
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      s.E[k] = E_ring[i];
      s.G_reduced[k] = G_reduced_ring[i];
      s.G[k] = G_reduced_ring[i] * sn * sn;
      s.measure[k] = m;
      s.area_element[k] = m * sn;
      s.H[k] = H_ring[i];
      s.K[k] = K_ring[i];
    }
  }
  return s;
}

SurfaceSample coordinate_sphere(const AHFamily& family, double epsilon, const QuadratureGrid& grid) {
  const CollarSlice slice = family.slice(epsilon);
  const int n = grid.n_theta();
  const double sh = std::sinh(epsilon);
  const double ch = std::cosh(epsilon);
  std::vector<double> E(n), H(n);
  for (int i = 0; i < n; ++i) {
    const double th = grid.theta(i);
    const double phi = slice.phi(th);
    if (!(phi > 0.0)) throw DomainError("coordinate_sphere: collar metric degenerates");
    E[i] = phi / (sh * sh);
    H[i] = 2.0 * ch - sh * slice.dphi_drho(th) / phi;
  }
  return revolution_surface(E, E, H, grid, epsilon);
}

SurfaceSample geodesic_sphere(double radius, const QuadratureGrid& grid) {
  if (!(radius > 0.0)) throw DomainError("geodesic_sphere: radius must be positive");
  const double sh = std::sinh(radius);
  const std::vector<double> E(grid.n_theta(), sh * sh);
  const std::vector<double> H(grid.n_theta(), 2.0 / std::tanh(radius));
  return revolution_surface(E, E, H, grid);
}

SurfaceSample round_sphere(double radius, double mean_curvature, const QuadratureGrid& grid) {
  if (!(radius > 0.0)) throw DomainError("round_sphere: radius must be positive");
  const std::vector<double> E(grid.n_theta(), radius * radius);
  const std::vector<double> H(grid.n_theta(), mean_curvature);
  return revolution_surface(E, E, H, grid);
}

double integrate_scalar(const SurfaceSample& surface, std::span<const double> field,
                        const QuadratureGrid& grid) {
  require_node_size(field.size(), grid, "integrate_scalar");
  require_node_size(surface.measure.size(), grid, "integrate_scalar");
  double total = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      ring += field[k] * surface.measure[k];
    }
    total += grid.weight_theta(i) * ring;
  }
  return total * grid.weight_phi();
}

MinkowskiVector integrate_vector(const SurfaceSample& surface,
                                 std::span<const MinkowskiVector> field,
                                 const QuadratureGrid& grid) {
  require_node_size(field.size(), grid, "integrate_vector");
  require_node_size(surface.measure.size(), grid, "integrate_vector");
  MinkowskiVector total;
  for (int i = 0; i < grid.n_theta(); ++i) {
    MinkowskiVector ring;
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      ring += field[k] * surface.measure[k];
    }
    total += ring * grid.weight_theta(i);
  }
  return total * grid.weight_phi();
}

bool embeddability_check(const SurfaceSample& surface, double tol) {
  if (surface.K.empty()) return false;
  const double kmin = *std::min_element(surface.K.begin(), surface.K.end());
  return kmin > -1.0 + tol;
}

std::vector<double> surface_laplacian(const SurfaceSample& surface, std::span<const double> field,
                                      const QuadratureGrid& grid) {
  require_node_size(field.size(), grid, "surface_laplacian");
  require_node_size(surface.E.size(), grid, "surface_laplacian");
  const int nt = grid.n_theta();
  const int np = grid.n_phi();
  const auto& interp = grid.theta_interpolant();

  std::vector<double> sqrtE(nt), q(nt);
  for (int i = 0; i < nt; ++i) {
    sqrtE[i] = std::sqrt(surface.E[grid.index(i, 0)]);
    q[i] = std::sqrt(surface.G_reduced[grid.index(i, 0)]);
    for (int j = 1; j < np; ++j) {
      const int k = grid.index(i, j);
      if (surface.F[k] != 0.0 || surface.E[k] != surface.E[grid.index(i, 0)] ||
          surface.G_reduced[k] != surface.G_reduced[grid.index(i, 0)]) {
        throw DomainError("surface_laplacian: metric is not rotationally symmetric");
      }
    }
  }

  // Mode operator on g(x) = s^p gt(x), s = sin theta, p = k mod 2:
  //   B = (q / sqrt E) (s^2 gt_x - p x gt)
  //   L g = s^p B_x / (sqrt E q) + s^(p-2) (-p x B / (sqrt E q) - k^2 gt / q^2)
  // For even k the bracket is -k^2 g / G, which is regular because even
  // modes with k > 0 vanish like s^2 at the poles.
  auto apply_mode = [&](int k, std::span<const double> g) {
    const int p = k % 2;
    std::vector<double> gt(nt), out(nt);
    for (int i = 0; i < nt; ++i) gt[i] = p ? g[i] / grid.sin_theta(i) : g[i];
    const std::vector<double> gtx = interp.differentiate(gt);
    std::vector<double> B(nt);
    for (int i = 0; i < nt; ++i) {
      const double x = grid.cos_theta(i);
      const double s2 = 1.0 - x * x;
      B[i] = q[i] / sqrtE[i] * (s2 * gtx[i] - p * x * gt[i]);
    }
    const std::vector<double> Bx = interp.differentiate(B);
    for (int i = 0; i < nt; ++i) {
      const double x = grid.cos_theta(i);
      const double s = grid.sin_theta(i);
      const double sp = p ? s : 1.0;
      const double eq = sqrtE[i] * q[i];
      out[i] = sp * Bx[i] / eq +
               sp / (s * s) * (-p * x * B[i] / eq - double(k) * k * gt[i] / (q[i] * q[i]));
    }
    return out;
  };

  std::vector<double> result(grid.size(), 0.0);
  const int kmax = np / 2;
  std::vector<double> a(nt), b(nt);
  for (int k = 0; k <= kmax; ++k) {
    const bool nyquist = (np % 2 == 0) && k == kmax && k > 0;
    const double norm = (k == 0 || nyquist) ? 1.0 / np : 2.0 / np;
    bool has_sine = false;
    for (int i = 0; i < nt; ++i) {
      double ac = 0.0, as = 0.0;
      for (int j = 0; j < np; ++j) {
        const double ang = k * grid.phi(j);
        ac += field[grid.index(i, j)] * std::cos(ang);
        as += field[grid.index(i, j)] * std::sin(ang);
      }
      a[i] = norm * ac;
      b[i] = (k == 0 || nyquist) ? 0.0 : norm * as;
      has_sine = has_sine || b[i] != 0.0;
    }
    const std::vector<double> La = apply_mode(k, a);
    const std::vector<double> Lb = has_sine ? apply_mode(k, b) : std::vector<double>(nt, 0.0);
    for (int i = 0; i < nt; ++i) {
      for (int j = 0; j < np; ++j) {
        const double ang = k * grid.phi(j);
        result[grid.index(i, j)] += La[i] * std::cos(ang) + Lb[i] * std::sin(ang);
      }
    }
  }
  return result;
}

}  // namespace qlmass
