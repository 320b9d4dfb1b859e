#include "qlmass/quadrature_grid.hpp"

#include <cmath>
#include <numbers>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

std::vector<double> gl_nodes_checked(int n_theta) {
  if (n_theta < 2) throw DomainError("QuadratureGrid: n_theta must be at least 2");
  return gauss_legendre(n_theta).nodes;
}

}  // namespace

QuadratureGrid::QuadratureGrid(int n_theta, int n_phi)
    : n_theta_(n_theta),
      n_phi_(n_phi),
      x_(gl_nodes_checked(n_theta)),
      w_phi_(2.0 * std::numbers::pi / n_phi),
      interp_(x_) {
  if (n_phi < 1) throw DomainError("QuadratureGrid: n_phi must be positive");
  wx_ = gauss_legendre(n_theta).weights;
  sin_.resize(n_theta);
  theta_.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    sin_[i] = std::sqrt((1.0 - x_[i]) * (1.0 + x_[i]));
    theta_[i] = std::acos(x_[i]);
  }
  phi_.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) phi_[j] = w_phi_ * j;
}

double QuadratureGrid::integrate_round(std::span<const double> field) const {
  if (static_cast<int>(field.size()) != size()) {
    throw DomainError("integrate_round: field size does not match the grid");
  }
  double total = 0.0;
  for (int i = 0; i < n_theta_; ++i) {
    double ring = 0.0;
    for (int j = 0; j < n_phi_; ++j) ring += field[index(i, j)];
    total += wx_[i] * ring;
  }
  return total * w_phi_;
}

}  // namespace qlmass
