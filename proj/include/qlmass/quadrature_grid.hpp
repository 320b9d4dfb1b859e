#pragma once

#include <span>
#include <vector>

#include "qlmass/spectral.hpp"

namespace qlmass {

/**
 Product quadrature on S^2: Gauss-Legendre in x = cos(theta) (n_theta
 nodes, ordered north to south) times the uniform rule in phi with
 weight 2 pi / n_phi. Integrating 1 against the round area element
 dmu = dx dphi gives 4 pi.

 Per-node arrays are laid out row-major as index(i, j) = i * n_phi + j.
*/
class QuadratureGrid {
 public:
  QuadratureGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int size() const { return n_theta_ * n_phi_; }
  int index(int i, int j) const { return i * n_phi_ + j; }

  double cos_theta(int i) const { return x_[i]; }
  double sin_theta(int i) const { return sin_[i]; }
  double theta(int i) const { return theta_[i]; }
  /// Gauss-Legendre weight of node i (for dx).
  double weight_theta(int i) const { return wx_[i]; }
  double phi(int j) const { return phi_[j]; }
  double weight_phi() const { return w_phi_; }

  /// Barycentric interpolant on the cos(theta) nodes.
  const BarycentricInterpolant& theta_interpolant() const { return interp_; }

  /// Integral of a per-node field against the round area element of S^2.
  double integrate_round(std::span<const double> field) const;

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> x_;
  std::vector<double> wx_;
  std::vector<double> sin_;
  std::vector<double> theta_;
  std::vector<double> phi_;
  double w_phi_;
  BarycentricInterpolant interp_;
};

}  // namespace qlmass
