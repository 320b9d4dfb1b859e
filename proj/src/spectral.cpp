#include "qlmass/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence (|x| < 1).
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double pn = (n == 1) ? x : p1;
  const double pnm1 = (n == 1) ? 1.0 : p0;
  return {pn, n * (x * pn - pnm1) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dp] = legendre_with_derivative(n, x);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<double> chebyshev_nodes(int n) {
  if (n < 1) throw DomainError("chebyshev_nodes: need at least one node");
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * n));
  return x;
}

BarycentricInterpolant::BarycentricInterpolant(std::vector<double> nodes)
    : nodes_(std::move(nodes)) {
  const int n = size();
  if (n < 2) throw DomainError("BarycentricInterpolant: need at least two nodes");
  // w_j = 1 / prod_{k != j} (x_j - x_k), accumulated in log form
  std::vector<double> logw(n, 0.0);
  std::vector<int> sign(n, 1);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = nodes_[j] - nodes_[k];
      if (d == 0.0) throw DomainError("BarycentricInterpolant: repeated node");
      logw[j] -= std::log(std::abs(d));
      if (d < 0.0) sign[j] = -sign[j];
    }
  }
  const double shift = *std::max_element(logw.begin(), logw.end());
  weights_.resize(n);
  for (int j = 0; j < n; ++j) weights_[j] = sign[j] * std::exp(logw[j] - shift);

  diff_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      diff_(i, j) = (weights_[j] / weights_[i]) / (nodes_[i] - nodes_[j]);
      diag -= diff_(i, j);
    }
    diff_(i, i) = diag;
  }
}

double BarycentricInterpolant::evaluate(std::span<const double> values, double x) const {
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < size(); ++j) {
    const double d = x - nodes_[j];
    if (d == 0.0) return values[j];
    const double c = weights_[j] / d;
    num += c * values[j];
    den += c;
  }
  return num / den;
}

std::vector<double> BarycentricInterpolant::differentiate(std::span<const double> values) const {
  const Eigen::Map<const Eigen::VectorXd> v(values.data(), size());
  const Eigen::VectorXd d = diff_ * v;
  return {d.data(), d.data() + d.size()};
}

}  // namespace qlmass
