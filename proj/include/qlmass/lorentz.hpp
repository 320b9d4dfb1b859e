#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace qlmass {

/**
 A point or vector of Minkowski space R^{3,1}, stored as (x1, x2, x3, t).
 The pairing is <<a,b>> = a1 b1 + a2 b2 + a3 b3 - at bt.
*/
struct MinkowskiVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double t = 0.0;

  constexpr double operator[](int i) const {
    return i == 0 ? x1 : i == 1 ? x2 : i == 2 ? x3 : t;
  }
  constexpr double& operator[](int i) {
    return i == 0 ? x1 : i == 1 ? x2 : i == 2 ? x3 : t;
  }

  MinkowskiVector& operator+=(const MinkowskiVector& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3; t += o.t;
    return *this;
  }
  MinkowskiVector& operator-=(const MinkowskiVector& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; t -= o.t;
    return *this;
  }
  MinkowskiVector& operator*=(double s) {
    x1 *= s; x2 *= s; x3 *= s; t *= s;
    return *this;
  }

  /// Euclidean norm of the spatial part.
  double spatial_norm() const;
  /// max(|x1|,|x2|,|x3|,|t|)
  double max_abs() const;
  bool is_finite() const;

  Eigen::Vector4d to_eigen() const { return {x1, x2, x3, t}; }
  static MinkowskiVector from_eigen(const Eigen::Vector4d& v) {
    return {v(0), v(1), v(2), v(3)};
  }

  friend bool operator==(const MinkowskiVector&, const MinkowskiVector&) = default;
};

inline MinkowskiVector operator+(MinkowskiVector a, const MinkowskiVector& b) { return a += b; }
inline MinkowskiVector operator-(MinkowskiVector a, const MinkowskiVector& b) { return a -= b; }
inline MinkowskiVector operator*(MinkowskiVector a, double s) { return a *= s; }
inline MinkowskiVector operator*(double s, MinkowskiVector a) { return a *= s; }
inline MinkowskiVector operator-(const MinkowskiVector& a) { return {-a.x1, -a.x2, -a.x3, -a.t}; }

double lorentz_inner(const MinkowskiVector& a, const MinkowskiVector& b);

enum class CausalClass {
  zero,
  future_timelike,
  past_timelike,
  future_null,
  past_null,
  spacelike,
};

std::string_view to_string(CausalClass c);
/// Inverse of to_string; throws DomainError on unknown names.
CausalClass causal_class_from_string(std::string_view name);

/// True for zero, future-timelike and future-null: the vectors v with
/// <<v,eta>> <= 0 for every eta on the future light cone.
bool is_future_causal(CausalClass c);

/// 1e-9 * (1 + |v|_inf)
double default_causal_tolerance(const MinkowskiVector& v);

/**
 Classify v by the sign of <<v,v>> and of its time component. Values of
 <<v,v>> within tol of zero are tagged null; |v|_inf <= tol is zero.
*/
CausalClass causal_classify(const MinkowskiVector& v, double tol);
CausalClass causal_classify(const MinkowskiVector& v);

/// A point z = (z1, z2) of C^2 parametrizing imaginary Killing spinors.
struct SpinorParameter {
  std::complex<double> z1;
  std::complex<double> z2;

  double norm_squared() const { return std::norm(z1) + std::norm(z2); }
};

/**
 Quadratic map C^2 -> closed future light cone,
   eta(z) = (-(|z1|^2 - |z2|^2), -(z1 conj(z2) + conj(z1) z2),
             -i (z1 conj(z2) - conj(z1) z2), |z1|^2 + |z2|^2).
 On the unit sphere |z| = 1 this is the Hopf map onto the t = 1 slice.
*/
MinkowskiVector hopf_eta(const SpinorParameter& z);

/// omega(theta, phi) = (sin theta cos phi, sin theta sin phi, cos theta).
std::array<double, 3> unit_direction(double theta, double phi);

/// (sinh r * omega(theta, phi), cosh r) on the hyperboloid <<X,X>> = -1.
MinkowskiVector hyperboloid_point(double r, double theta, double phi);

/**
 A linear map of R^{3,1} preserving the pairing. Only axis boosts and
 spatial rotations are synthesized; general matrices are validated.
*/
class LorentzMap {
 public:
  static constexpr double kTolerance = 1e-12;

  LorentzMap();  // identity

  /// Validates M^T G M = G to kTolerance (relative to |M|^2); throws DomainError.
  static LorentzMap from_matrix(const Eigen::Matrix4d& m);

  /// Boost of given rapidity mixing spatial axis (0,1,2) with time.
  static LorentzMap boost(int axis, double rapidity);
  /// Rotation by angle about a spatial axis (0,1,2), right-handed.
  static LorentzMap rotation(int axis, double angle);

  const Eigen::Matrix4d& matrix() const { return m_; }

  /// det = +1 and time-time entry >= 1.
  bool is_restricted() const;

  MinkowskiVector operator()(const MinkowskiVector& v) const;
  LorentzMap operator*(const LorentzMap& other) const;
  LorentzMap inverse() const;

 private:
  explicit LorentzMap(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

/// Largest entry of |M^T G M - G| with G = diag(1,1,1,-1).
double lorentz_defect(const Eigen::Matrix4d& m);

MinkowskiVector apply_lorentz(const LorentzMap& map, const MinkowskiVector& v);

}  // namespace qlmass
