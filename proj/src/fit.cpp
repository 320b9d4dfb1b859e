#include "qlmass/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

void check_samples(std::span<const double> eps, std::span<const double> values, std::size_t min_n,
                   const char* what) {
  if (eps.size() != values.size()) throw DomainError(std::string(what) + ": size mismatch");
  if (eps.size() < min_n) throw DomainError(std::string(what) + ": too few samples");
  std::vector<double> sorted(eps.begin(), eps.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0)) throw DomainError(std::string(what) + ": eps must be positive");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError(std::string(what) + ": eps values must be distinct");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite value");
  }
}

struct LinearSolve {
  double a = 0.0;
  double c = 0.0;
  double rss = 0.0;
};

// Minimize sum (v - a - c eps^p)^2 over (a, c).
LinearSolve solve_linear(std::span<const double> eps, std::span<const double> v, double p) {
  const auto n = static_cast<Eigen::Index>(eps.size());
  Eigen::MatrixXd M(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, 0) = 1.0;
    M(i, 1) = std::pow(eps[i], p);
    y(i) = v[i];
  }
  const Eigen::Vector2d x = M.colPivHouseholderQr().solve(y);
  return {x(0), x(1), (M * x - y).squaredNorm()};
}

void fill_standard_errors(LimitFit& fit, std::span<const double> eps, double rss, int n_params) {
  const int n = static_cast<int>(eps.size());
  const int dof = n - n_params;
  const double sigma2 = dof > 0 ? rss / dof : 0.0;
  Eigen::MatrixXd J(n, n_params);
  for (int i = 0; i < n; ++i) {
    const double ep = std::pow(eps[i], fit.order);
    J(i, 0) = 1.0;
    J(i, 1) = ep;
    if (n_params == 3) J(i, 2) = fit.coefficient * ep * std::log(eps[i]);
  }
  const Eigen::MatrixXd JtJ = J.transpose() * J;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(JtJ);
  if (!lu.isInvertible()) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (n_params == 3) {
      // Order unidentifiable: report the linear-model errors and an infinite order error.
      fill_standard_errors(fit, eps, rss, 2);
    } else {
      fit.limit_se = inf;
      fit.coefficient_se = inf;
    }
    fit.order_se = inf;
    return;
  }
  const Eigen::MatrixXd cov = sigma2 * lu.inverse();
  fit.limit_se = std::sqrt(std::max(0.0, cov(0, 0)));
  fit.coefficient_se = std::sqrt(std::max(0.0, cov(1, 1)));
  if (n_params == 3) fit.order_se = std::sqrt(std::max(0.0, cov(2, 2)));
}

bool is_monotone(std::span<const double> eps, std::span<const double> values, double tol) {
  std::vector<int> idx(eps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return eps[a] < eps[b]; });
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double thresh = tol * std::max(1.0, scale);
  int sign = 0;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    const double d = values[idx[k + 1]] - values[idx[k]];
    if (std::abs(d) <= thresh) continue;
    const int s = d > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return true;
}

}  // namespace

LimitFit fit_limit(std::span<const double> eps, std::span<const double> values,
                   double monotone_tol) {
  check_samples(eps, values, 3, "fit_limit");
  auto rss_at = [&](double p) { return solve_linear(eps, values, p).rss; };

  constexpr double step = 0.01;
  double best_p = kMinFitOrder;
  double best_rss = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::lround((kMaxFitOrder - kMinFitOrder) / step));
  for (int k = 0; k <= steps; ++k) {
    const double p = kMinFitOrder + k * step;
    const double r = rss_at(p);
    if (r < best_rss) {
      best_rss = r;
      best_p = p;
    }
  }

  // Golden-section refinement inside the bracketing grid cells.
  double lo = std::max(kMinFitOrder, best_p - step);
  double hi = std::min(kMaxFitOrder, best_p + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = rss_at(x1), f2 = rss_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = rss_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = rss_at(x2);
    }
  }
  const double p_ref = 0.5 * (lo + hi);
  if (rss_at(p_ref) <= best_rss) best_p = p_ref;

  const LinearSolve lin = solve_linear(eps, values, best_p);
  LimitFit fit;
  fit.limit = lin.a;
  fit.coefficient = lin.c;
  fit.order = best_p;
  fit.rms_residual = std::sqrt(lin.rss / static_cast<double>(eps.size()));
  fill_standard_errors(fit, eps, lin.rss, 3);

  double vmin = *std::min_element(values.begin(), values.end());
  double vmax = *std::max_element(values.begin(), values.end());
  double scale = std::max(std::abs(vmin), std::abs(vmax));
  const bool constant = (vmax - vmin) <= 1e-13 * std::max(1.0, scale);
  fit.monotone = is_monotone(eps, values, monotone_tol);
  const bool on_boundary = best_p <= kMinFitOrder + step || best_p >= kMaxFitOrder - step;
  fit.order_trusted = !constant && fit.monotone && !on_boundary;
  if (constant) {
    fit.limit = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    fit.coefficient = 0.0;
  }
  return fit;
}

LimitFit richardson_limit(std::span<const double> eps, std::span<const double> values,
                          double order) {
  check_samples(eps, values, 2, "richardson_limit");
  if (!(order > 0.0)) throw DomainError("richardson_limit: order must be positive");
  const LinearSolve lin = solve_linear(eps, values, order);
  LimitFit fit;
  fit.limit = lin.a;
  fit.coefficient = lin.c;
  fit.order = order;
  fit.known_order = true;
  fit.rms_residual = std::sqrt(lin.rss / static_cast<double>(eps.size()));
  fill_standard_errors(fit, eps, lin.rss, 2);
  fit.monotone = is_monotone(eps, values, 1e-12);
  return fit;
}

double linear_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear_slope: need two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw DomainError("linear_slope: abscissae are all equal");
  return sxy / sxx;
}

double decay_order(std::span<const double> eps, std::span<const double> values) {
  check_samples(eps, values, 2, "decay_order");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (values[i] == 0.0) throw DomainError("decay_order: zero value has no logarithm");
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(std::abs(values[i])));
  }
  return linear_slope(lx, ly);
}

std::optional<double> decay_order_above_floor(std::span<const double> eps,
                                              std::span<const double> values,
                                              std::span<const double> floors) {
  check_samples(eps, values, 1, "decay_order_above_floor");
  if (floors.size() != eps.size()) throw DomainError("decay_order_above_floor: size mismatch");
  std::vector<double> e, v;
  std::vector<int> idx(eps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return eps[a] < eps[b]; });
  for (int i : idx) {
    if (std::abs(values[i]) > floors[i]) {
      e.push_back(eps[i]);
      v.push_back(values[i]);
    }
  }
  if (e.size() < 3) return std::nullopt;
  const std::size_t keep = std::max<std::size_t>(3, (e.size() + 1) / 2);
  e.resize(keep);
  v.resize(keep);
  return decay_order(e, v);
}

std::vector<int> smallest_half(std::span<const double> eps) {
  std::vector<int> idx(eps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return eps[a] < eps[b]; });
  idx.resize((eps.size() + 1) / 2);
  return idx;
}

}  // namespace qlmass
