#include "qlmass/embed_h3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "qlmass/errors.hpp"
#include "qlmass/spectral.hpp"

namespace qlmass {

namespace {

// q = sqrt(G / sin^2 theta) and P = (E - q^2) / (1 - x^2) with their x-derivatives.
struct MetricJet {
  double q, qx, qxx, P, Px;
};

class MetricInterpolant {
 public:
  MetricInterpolant(const RevolutionMetric& metric, int n)
      : interp_(chebyshev_nodes(n)) {
    const auto& xs = interp_.nodes();
    q_.resize(n);
    P_.resize(n);
    for (int i = 0; i < n; ++i) {
      const double th = std::acos(xs[i]);
      const double E = metric.E(th);
      const double Gr = metric.G_reduced(th);
      if (!(E > 0.0) || !(Gr > 0.0) || !std::isfinite(E) || !std::isfinite(Gr)) {
        throw EmbeddingError("embed_revolution: metric is not positive definite");
      }
      q_[i] = std::sqrt(Gr);
      P_[i] = (E - Gr) / (1.0 - xs[i] * xs[i]);
    }
    qx_ = interp_.differentiate(q_);
    qxx_ = interp_.differentiate(qx_);
    Px_ = interp_.differentiate(P_);
  }

  MetricJet operator()(double x) const {
    return {interp_.evaluate(q_, x), interp_.evaluate(qx_, x), interp_.evaluate(qxx_, x),
            interp_.evaluate(P_, x), interp_.evaluate(Px_, x)};
  }

 private:
  BarycentricInterpolant interp_;
  std::vector<double> q_, qx_, qxx_, P_, Px_;
};

// Right-hand side of the profile equation in x and its total derivative.
struct ProfilePoint {
  double u_x, u_xx;
};

ProfilePoint profile_rhs(const MetricJet& j, double x, double u, int branch, bool second) {
  const double s2 = 1.0 - x * x;
  const double A = j.q * (x * j.q - s2 * j.qx);
  const double Q = 1.0 + s2 * j.q * j.q;
  const double M = j.P + j.q * j.q + 2.0 * x * j.q * j.qx - s2 * j.qx * j.qx;
  double D = Q * M + A * A;
  if (D < 0.0) {
    if (D < -1e-12 * (std::abs(Q * M) + A * A)) {
      throw EmbeddingError("embed_revolution: negative discriminant, metric not realizable");
    }
    D = 0.0;
  }
  const double S = std::sqrt(D);
  const double w = std::sqrt(Q + u * u);
  const double N = -A * u + branch * w * S;
  ProfilePoint out{N / Q, 0.0};
  if (!second) return out;

  const double A_x = j.qx * (x * j.q - s2 * j.qx) + j.q * (j.q + 3.0 * x * j.qx - s2 * j.qxx);
  const double Q_x = -2.0 * x * j.q * j.q + 2.0 * s2 * j.q * j.qx;
  const double M_x = j.Px + 4.0 * j.q * j.qx + 4.0 * x * j.qx * j.qx + 2.0 * x * j.q * j.qxx -
                     2.0 * s2 * j.qx * j.qxx;
  const double D_x = Q_x * M + Q * M_x + 2.0 * A * A_x;
  const double S_x = S > 0.0 ? D_x / (2.0 * S) : 0.0;
  const double w_x = (Q_x + 2.0 * u * out.u_x) / (2.0 * w);
  const double N_x = -A_x * u - A * out.u_x + branch * (w_x * S + w * S_x);
  out.u_xx = (N_x * Q - N * Q_x) / (Q * Q);
  return out;
}

using State = std::array<double, 1>;

// u at the grid's theta-nodes for u(north pole) = u0, integrating in tau = -x.
std::vector<double> integrate_profile(const MetricInterpolant& jet, const QuadratureGrid& grid,
                                      int branch, double u0, double tol) {
  namespace ode = boost::numeric::odeint;
  const int n = grid.n_theta();
  std::vector<double> times;
  times.reserve(n + 1);
  times.push_back(-1.0);
  for (int i = 0; i < n; ++i) times.push_back(-grid.cos_theta(i));

  auto rhs = [&](const State& y, State& dydt, double tau) {
    const double x = -tau;
    dydt[0] = -profile_rhs(jet(x), x, y[0], branch, false).u_x;
  };
  std::vector<double> u;
  u.reserve(n + 1);
  auto observer = [&](const State& y, double) { u.push_back(y[0]); };

  State y{u0};
  auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
  try {
    ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3, observer);
  } catch (const EmbeddingError&) {
    throw;
  } catch (const std::exception& e) {
    throw EmbeddingError(std::string("embed_revolution: integrator failure: ") + e.what());
  }
  if (static_cast<int>(u.size()) != n + 1) {
    throw EmbeddingError("embed_revolution: integrator did not reach every node");
  }
  u.erase(u.begin());
  for (double v : u) {
    if (!std::isfinite(v)) throw EmbeddingError("embed_revolution: non-finite profile");
  }
  return u;
}

}  // namespace

EmbeddedSurface embed_round(double radius, const QuadratureGrid& grid) {
  if (!(radius > 0.0)) throw DomainError("embed_round: radius must be positive");
  const double sh = std::sinh(radius);
  const double ch = std::cosh(radius);
  EmbeddedSurface s;
  s.X.resize(grid.size());
  s.normal.resize(grid.size());
  s.H0.assign(grid.size(), 2.0 * ch / sh);
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      const auto om = unit_direction(grid.theta(i), grid.phi(j));
      s.X[k] = {sh * om[0], sh * om[1], sh * om[2], ch};
      s.normal[k] = {-ch * om[0], -ch * om[1], -ch * om[2], -sh};
      s.hyperboloid_residual =
          std::max(s.hyperboloid_residual, std::abs(lorentz_inner(s.X[k], s.X[k]) + 1.0));
    }
  }
  return s;
}

RevolutionProfile embed_revolution(const RevolutionMetric& metric, const QuadratureGrid& grid,
                                   const EmbedOptions& options) {
  if (options.branch != 1 && options.branch != -1) {
    throw DomainError("embed_revolution: branch must be +1 or -1");
  }
  for (double th : {0.0, M_PI}) {
    const double E = metric.E(th);
    const double Gr = metric.G_reduced(th);
    if (std::abs(E - Gr) > 1e-8 * std::max(E, Gr)) {
      throw EmbeddingError("embed_revolution: metric is not smooth at the poles");
    }
  }
  const MetricInterpolant jet(metric, options.interpolation_nodes);
  const int n = grid.n_theta();
  const int sb = options.branch;

  // First pass from u = 0 at the north pole; the axial boost that centers
  // the profile moves the pole to u = sinh(chi) with tanh(chi) = -<u f>/<w f>.
  std::vector<double> u = integrate_profile(jet, grid, sb, 0.0, options.tolerance);
  double Iu = 0.0, Iw = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.cos_theta(i);
    const MetricJet j = jet(x);
    const double f2 = (1.0 - x * x) * j.q * j.q;
    Iu += grid.weight_theta(i) * u[i] * j.q;
    Iw += grid.weight_theta(i) * std::sqrt(1.0 + f2 + u[i] * u[i]) * j.q;
  }
  const double chi = std::atanh(-Iu / Iw);
  u = integrate_profile(jet, grid, sb, std::sinh(chi), options.tolerance);

  RevolutionProfile p;
  p.branch = sb;
  auto resize = [n](auto&... v) { (v.resize(n), ...); };
  resize(p.theta, p.f, p.u, p.w, p.f_t, p.u_t, p.w_t, p.f_tt, p.u_tt, p.w_tt, p.E_target,
         p.G_target);
  for (int i = 0; i < n; ++i) {
    const double x = grid.cos_theta(i);
    const double sn = grid.sin_theta(i);
    const double s2 = 1.0 - x * x;
    const MetricJet j = jet(x);
    const ProfilePoint pp = profile_rhs(j, x, u[i], sb, true);
    p.theta[i] = grid.theta(i);
    p.f[i] = sn * j.q;
    p.u[i] = u[i];
    p.w[i] = std::sqrt(1.0 + p.f[i] * p.f[i] + u[i] * u[i]);
    p.f_t[i] = x * j.q - s2 * j.qx;
    p.f_tt[i] = -sn * (j.q + 3.0 * x * j.qx - s2 * j.qxx);
    p.u_t[i] = -sn * pp.u_x;
    p.u_tt[i] = s2 * pp.u_xx - x * pp.u_x;
    p.w_t[i] = (p.f[i] * p.f_t[i] + p.u[i] * p.u_t[i]) / p.w[i];
    p.w_tt[i] = (p.f_t[i] * p.f_t[i] + p.f[i] * p.f_tt[i] + p.u_t[i] * p.u_t[i] +
                 p.u[i] * p.u_tt[i] - p.w_t[i] * p.w_t[i]) /
                p.w[i];
    p.E_target[i] = metric.E(p.theta[i]);
    p.G_target[i] = metric.G_reduced(p.theta[i]) * sn * sn;
    const double c = p.f[i] * p.f[i] + p.u[i] * p.u[i] - p.w[i] * p.w[i];
    p.hyperboloid_residual = std::max(p.hyperboloid_residual, std::abs(c + 1.0));
  }

  // Independent isometry check: differentiate the u samples spectrally.
  const std::vector<double> ux = grid.theta_interpolant().differentiate(p.u);
  double dE = 0.0, dG = 0.0, maxE = 0.0, maxG = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ut = -grid.sin_theta(i) * ux[i];
    const double wt = (p.f[i] * p.f_t[i] + p.u[i] * ut) / p.w[i];
    const double Et = p.f_t[i] * p.f_t[i] + ut * ut - wt * wt;
    dE = std::max(dE, std::abs(Et - p.E_target[i]));
    dG = std::max(dG, std::abs(p.f[i] * p.f[i] - p.G_target[i]));
    maxE = std::max(maxE, std::abs(p.E_target[i]));
    maxG = std::max(maxG, std::abs(p.G_target[i]));
  }
  p.isometry_residual = dE / maxE + dG / maxG;
  if (!(p.isometry_residual <= options.residual_tolerance)) {
    throw EmbeddingError("embed_revolution: isometry residual " +
                         std::to_string(p.isometry_residual) + " above tolerance");
  }
  return p;
}

ProfileNormal profile_normal(const RevolutionProfile& p) {
  const std::size_t n = p.f.size();
  // Orientation: the inward normal satisfies sigma = sign(-int f u_t dtheta) = +1
  // for profiles traversed like the branch +1 geodesic sphere.
  double flux = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    flux -= 0.5 * (p.theta[i + 1] - p.theta[i]) *
            (p.f[i] * p.u_t[i] + p.f[i + 1] * p.u_t[i + 1]);
  }
  const double sigma = flux >= 0.0 ? 1.0 : -1.0;

  ProfileNormal nu;
  nu.a.resize(n);
  nu.b.resize(n);
  nu.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double C1 = p.u[i] * p.w_t[i] - p.w[i] * p.u_t[i];
    const double C2 = p.w[i] * p.f_t[i] - p.f[i] * p.w_t[i];
    const double C3 = p.f[i] * p.u_t[i] - p.u[i] * p.f_t[i];
    const double E = p.f_t[i] * p.f_t[i] + p.u_t[i] * p.u_t[i] - p.w_t[i] * p.w_t[i];
    if (!(E > 0.0)) throw EmbeddingError("mean_curvature_h0: degenerate tangent plane");
    const double norm = std::sqrt(E);
    nu.a[i] = -sigma * C1 / norm;
    nu.b[i] = -sigma * C2 / norm;
    nu.d[i] = sigma * C3 / norm;
  }
  return nu;
}

std::vector<double> mean_curvature_h0(const RevolutionProfile& p) {
  const ProfileNormal nu = profile_normal(p);
  std::vector<double> H0(p.f.size());
  for (std::size_t i = 0; i < H0.size(); ++i) {
    const double E = p.f_t[i] * p.f_t[i] + p.u_t[i] * p.u_t[i] - p.w_t[i] * p.w_t[i];
    const double II_tt = nu.a[i] * p.f_tt[i] + nu.b[i] * p.u_tt[i] - nu.d[i] * p.w_tt[i];
    H0[i] = II_tt / E - nu.a[i] / p.f[i];
  }
  return H0;
}

EmbeddedSurface embedded_surface(const RevolutionProfile& p, const QuadratureGrid& grid,
                                 double epsilon) {
  if (static_cast<int>(p.f.size()) != grid.n_theta()) {
    throw DomainError("embedded_surface: profile does not match grid");
  }
  const ProfileNormal nu = profile_normal(p);
  const std::vector<double> H0 = mean_curvature_h0(p);
  EmbeddedSurface s;
  s.epsilon = epsilon;
  s.isometry_residual = p.isometry_residual;
  s.hyperboloid_residual = p.hyperboloid_residual;
  s.X.resize(grid.size());
  s.normal.resize(grid.size());
  s.H0.resize(grid.size());
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      const double c = std::cos(grid.phi(j));
      const double sn = std::sin(grid.phi(j));
      s.X[k] = {p.f[i] * c, p.f[i] * sn, p.u[i], p.w[i]};
      s.normal[k] = {nu.a[i] * c, nu.a[i] * sn, nu.b[i], nu.d[i]};
      s.H0[k] = H0[i];
    }
  }
  return s;
}

RevolutionMetric coordinate_sphere_metric(const AHFamily& family, double epsilon) {
  const CollarSlice slice = family.slice(epsilon);
  const double sh2 = std::sinh(epsilon) * std::sinh(epsilon);
  auto E = [slice, sh2](double th) { return slice.phi(th) / sh2; };
  return {E, E};
}

EmbeddedSurface embed_coordinate_sphere(const AHFamily& family, double epsilon,
                                        const QuadratureGrid& grid, const EmbedOptions& options) {
  const RevolutionProfile p = embed_revolution(coordinate_sphere_metric(family, epsilon), grid,
                                               options);
  return embedded_surface(p, grid, epsilon);
}

EmbeddedSurface boost_surface(const LorentzMap& map, const EmbeddedSurface& surface) {
  if (!map.is_restricted()) throw DomainError("boost_surface: map is not restricted");
  EmbeddedSurface out = surface;
  for (auto& x : out.X) x = map(x);
  for (auto& v : out.normal) v = map(v);
  return out;
}

void write_profile_csv(std::ostream& out, const RevolutionProfile& p) {
  const std::vector<double> H0 = mean_curvature_h0(p);
  const auto old_precision = out.precision(17);
  out << "theta,f,u,w,H0\n";
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    out << p.theta[i] << ',' << p.f[i] << ',' << p.u[i] << ',' << p.w[i] << ',' << H0[i] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace qlmass
