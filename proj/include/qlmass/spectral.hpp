#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace qlmass {

/// Gauss-Legendre rule on [-1, 1]; nodes sorted in decreasing order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Chebyshev points of the first kind, cos((2j+1) pi / (2n)), decreasing.
std::vector<double> chebyshev_nodes(int n);

/**
 Polynomial interpolation through a fixed set of distinct nodes in
 barycentric form, with the associated spectral differentiation matrix.
*/
class BarycentricInterpolant {
 public:
  explicit BarycentricInterpolant(std::vector<double> nodes);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  double evaluate(std::span<const double> values, double x) const;

  /// D(i,j) = d l_j / dx at node i.
  const Eigen::MatrixXd& differentiation_matrix() const { return diff_; }

  std::vector<double> differentiate(std::span<const double> values) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  Eigen::MatrixXd diff_;
};

}  // namespace qlmass
