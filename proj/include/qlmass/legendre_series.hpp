#pragma once

#include <vector>

namespace qlmass {

/**
 An axisymmetric function on S^2 given as a Legendre series in cos(theta),
   f(theta) = sum_l c_l P_l(cos theta).
 Every such function is smooth at the poles, and its round-sphere
 Laplacian is exact: Delta P_l = -l(l+1) P_l.
*/
class LegendreSeries {
 public:
  LegendreSeries() = default;
  explicit LegendreSeries(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  const std::vector<double>& coefficients() const { return c_; }
  bool is_zero() const;

  double value(double theta) const;
  double d_theta(double theta) const;
  double d2_theta(double theta) const;
  /// Laplacian with respect to the unit round metric h0.
  double laplacian(double theta) const;
  /// Upper bound sum |c_l| on max |f|.
  double sup_bound() const;

  LegendreSeries scaled(double s) const;

 private:
  struct Eval {
    double f = 0.0;
    double df = 0.0;   // d/dx
    double d2f = 0.0;  // d^2/dx^2
    double lap = 0.0;
  };
  Eval evaluate_x(double x) const;

  std::vector<double> c_;
};

}  // namespace qlmass
