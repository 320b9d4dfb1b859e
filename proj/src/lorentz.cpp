#include "qlmass/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

const Eigen::Matrix4d& minkowski_gram() {
  static const Eigen::Matrix4d g = Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
  return g;
}

}  // namespace

double MinkowskiVector::spatial_norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

double MinkowskiVector::max_abs() const {
  return std::max({std::abs(x1), std::abs(x2), std::abs(x3), std::abs(t)});
}

bool MinkowskiVector::is_finite() const {
  return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) && std::isfinite(t);
}

double lorentz_inner(const MinkowskiVector& a, const MinkowskiVector& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 - a.t * b.t;
}

std::string_view to_string(CausalClass c) {
  switch (c) {
    case CausalClass::zero: return "zero";
    case CausalClass::future_timelike: return "future-timelike";
    case CausalClass::past_timelike: return "past-timelike";
    case CausalClass::future_null: return "future-null";
    case CausalClass::past_null: return "past-null";
    case CausalClass::spacelike: return "spacelike";
  }
  return "unknown";
}

CausalClass causal_class_from_string(std::string_view name) {
  for (auto c : {CausalClass::zero, CausalClass::future_timelike, CausalClass::past_timelike,
                 CausalClass::future_null, CausalClass::past_null, CausalClass::spacelike}) {
    if (to_string(c) == name) return c;
  }
  throw DomainError("unknown causal class '" + std::string(name) + "'");
}

bool is_future_causal(CausalClass c) {
  return c == CausalClass::zero || c == CausalClass::future_timelike ||
         c == CausalClass::future_null;
}

double default_causal_tolerance(const MinkowskiVector& v) { return 1e-9 * (1.0 + v.max_abs()); }

CausalClass causal_classify(const MinkowskiVector& v, double tol) {
  if (!(tol > 0.0)) throw DomainError("causal_classify: tolerance must be positive");
  if (v.max_abs() <= tol) return CausalClass::zero;
  const double q = lorentz_inner(v, v);
  if (q > tol) return CausalClass::spacelike;
  const bool future = v.t > 0.0;
  if (q < -tol) return future ? CausalClass::future_timelike : CausalClass::past_timelike;
  return future ? CausalClass::future_null : CausalClass::past_null;
}

CausalClass causal_classify(const MinkowskiVector& v) {
  return causal_classify(v, default_causal_tolerance(v));
}

MinkowskiVector hopf_eta(const SpinorParameter& z) {
  const double a = std::norm(z.z1);
  const double b = std::norm(z.z2);
  const std::complex<double> c = z.z1 * std::conj(z.z2);
  // z1 conj(z2) + conj(z1) z2 = 2 Re c;  -i (z1 conj(z2) - conj(z1) z2) = 2 Im c
  return {-(a - b), -2.0 * c.real(), 2.0 * c.imag(), a + b};
}

std::array<double, 3> unit_direction(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

MinkowskiVector hyperboloid_point(double r, double theta, double phi) {
  const auto w = unit_direction(theta, phi);
  const double sr = std::sinh(r);
  return {sr * w[0], sr * w[1], sr * w[2], std::cosh(r)};
}

LorentzMap::LorentzMap() : m_(Eigen::Matrix4d::Identity()) {}

double lorentz_defect(const Eigen::Matrix4d& m) {
  const Eigen::Matrix4d& g = minkowski_gram();
  return (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
}

LorentzMap LorentzMap::from_matrix(const Eigen::Matrix4d& m) {
  if (!m.allFinite()) throw DomainError("LorentzMap: non-finite matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (lorentz_defect(m) > kTolerance * scale * scale) {
    throw DomainError("LorentzMap: matrix does not preserve the Minkowski pairing");
  }
  return LorentzMap(m);
}

LorentzMap LorentzMap::boost(int axis, double rapidity) {
  if (axis < 0 || axis > 2) throw DomainError("LorentzMap::boost: axis must be 0, 1 or 2");
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  m(axis, axis) = ch;
  m(axis, 3) = sh;
  m(3, axis) = sh;
  m(3, 3) = ch;
  return LorentzMap(m);
}

LorentzMap LorentzMap::rotation(int axis, double angle) {
  if (axis < 0 || axis > 2) throw DomainError("LorentzMap::rotation: axis must be 0, 1 or 2");
  const int i = (axis + 1) % 3;
  const int j = (axis + 2) % 3;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m(i, i) = c;
  m(i, j) = -s;
  m(j, i) = s;
  m(j, j) = c;
  return LorentzMap(m);
}

bool LorentzMap::is_restricted() const {
  return m_(3, 3) >= 1.0 - kTolerance && m_.determinant() > 0.0;
}

MinkowskiVector LorentzMap::operator()(const MinkowskiVector& v) const {
  return MinkowskiVector::from_eigen(m_ * v.to_eigen());
}

LorentzMap LorentzMap::operator*(const LorentzMap& other) const {
  return LorentzMap(Eigen::Matrix4d(m_ * other.m_));
}

LorentzMap LorentzMap::inverse() const {
  // G M^T G is the inverse of any map preserving G.
  const Eigen::Matrix4d& g = minkowski_gram();
  return LorentzMap(Eigen::Matrix4d(g * m_.transpose() * g));
}

MinkowskiVector apply_lorentz(const LorentzMap& map, const MinkowskiVector& v) {
  if (lorentz_defect(map.matrix()) >
      LorentzMap::kTolerance * std::pow(std::max(1.0, map.matrix().cwiseAbs().maxCoeff()), 2)) {
    throw DomainError("apply_lorentz: map does not preserve the Minkowski pairing");
  }
  return map(v);
}

}  // namespace qlmass
