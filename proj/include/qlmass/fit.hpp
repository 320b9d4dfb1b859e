#pragma once

#include <optional>
#include <span>
#include <vector>

namespace qlmass {

/// v(eps) = limit + coefficient * eps^order fitted by least squares.
struct LimitFit {
  double limit = 0.0;
  double coefficient = 0.0;
  double order = 0.0;
  double rms_residual = 0.0;
  // Standard errors from the linearized model; zero when there are no
  // spare degrees of freedom, infinite for an unidentifiable order.
  double limit_se = 0.0;
  double coefficient_se = 0.0;
  double order_se = 0.0;
  bool order_trusted = true;
  bool monotone = true;
  bool known_order = false;  // Richardson-type fit with the order held fixed
};

inline constexpr double kMinFitOrder = 0.5;
inline constexpr double kMaxFitOrder = 6.0;

/**
 Variable-projection fit: for each order the limit and coefficient are a
 linear least-squares problem, and the order minimizing the residual is
 located on a grid over [0.5, 6] and refined by golden-section search.
 The order is flagged untrusted for (numerically) constant data, a
 non-monotone sequence, or a minimizer on the boundary of the range.
 Requires at least 3 samples with distinct positive eps.
*/
LimitFit fit_limit(std::span<const double> eps, std::span<const double> values,
                   double monotone_tol = 1e-12);

/// Least-squares extrapolation with the order fixed.
LimitFit richardson_limit(std::span<const double> eps, std::span<const double> values,
                          double order);

/// Slope of the least-squares line through (x, y).
double linear_slope(std::span<const double> x, std::span<const double> y);

/// Decay order p of |v| ~ C eps^p from the log-log slope.
double decay_order(std::span<const double> eps, std::span<const double> values);

/**
 Decay order over the samples whose value exceeds its floor: the smallest
 ceil(half) of them, widened to the three smallest when that leaves fewer
 than three. Empty when fewer than three samples clear their floor.
*/
std::optional<double> decay_order_above_floor(std::span<const double> eps,
                                              std::span<const double> values,
                                              std::span<const double> floors);

/// Indices of the ceil(n/2) smallest eps values, in increasing eps.
std::vector<int> smallest_half(std::span<const double> eps);

}  // namespace qlmass
