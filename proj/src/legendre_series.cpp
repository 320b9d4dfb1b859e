#include "qlmass/legendre_series.hpp"

#include <cmath>

namespace qlmass {

bool LegendreSeries::is_zero() const {
  for (double c : c_) {
    if (c != 0.0) return false;
  }
  return true;
}

LegendreSeries::Eval LegendreSeries::evaluate_x(double x) const {
  Eval out;
  if (c_.empty()) return out;
  // P_l, P_l', P_l'' by the differentiated three-term recurrence
  double p0 = 1.0, dp0 = 0.0, ddp0 = 0.0;
  double p1 = x, dp1 = 1.0, ddp1 = 0.0;
  out.f = c_[0];
  if (c_.size() > 1) {
    out.f += c_[1] * p1;
    out.df += c_[1] * dp1;
    out.lap -= 2.0 * c_[1] * p1;
  }
  for (std::size_t l = 2; l < c_.size(); ++l) {
    const double k = static_cast<double>(l);
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    const double dp2 = ((2.0 * k - 1.0) * (p1 + x * dp1) - (k - 1.0) * dp0) / k;
    const double ddp2 = ((2.0 * k - 1.0) * (2.0 * dp1 + x * ddp1) - (k - 1.0) * ddp0) / k;
    out.f += c_[l] * p2;
    out.df += c_[l] * dp2;
    out.d2f += c_[l] * ddp2;
    out.lap -= k * (k + 1.0) * c_[l] * p2;
    p0 = p1; dp0 = dp1; ddp0 = ddp1;
    p1 = p2; dp1 = dp2; ddp1 = ddp2;
  }
  return out;
}

double LegendreSeries::value(double theta) const { return evaluate_x(std::cos(theta)).f; }

double LegendreSeries::d_theta(double theta) const {
  return -std::sin(theta) * evaluate_x(std::cos(theta)).df;
}

double LegendreSeries::d2_theta(double theta) const {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const Eval e = evaluate_x(x);
  return s * s * e.d2f - x * e.df;
}

double LegendreSeries::laplacian(double theta) const { return evaluate_x(std::cos(theta)).lap; }

double LegendreSeries::sup_bound() const {
  double s = 0.0;
  for (double c : c_) s += std::abs(c);
  return s;
}

LegendreSeries LegendreSeries::scaled(double s) const {
  std::vector<double> c = c_;
  for (double& v : c) v *= s;
  return LegendreSeries(std::move(c));
}

}  // namespace qlmass
