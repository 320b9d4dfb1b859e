#include "qlmass/ah_metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/QR>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qlmass/errors.hpp"

namespace qlmass {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double ads_lapse_squared(double mass, double r) { return 1.0 + r * r - 2.0 * mass / r; }

// Largest real root of r^3 + r - 2m = 0 (zero for m = 0).
double ads_horizon(double mass) {
  if (mass <= 0.0) return 0.0;
  double r = std::cbrt(2.0 * mass);
  for (int i = 0; i < 60; ++i) {
    const double f = r * r * r + r - 2.0 * mass;
    const double step = f / (3.0 * r * r + 1.0);
    r -= step;
    if (std::abs(step) < 1e-16 * r) break;
  }
  return r;
}

// log(2r) + int_0^{1/r} (1 - (1 + x^2 - 2 m x^3)^{-1/2}) / x dx
double ads_collar_phi(double mass, double r) {
  auto integrand = [mass](double x) {
    if (x == 0.0) return 0.0;
    const double delta = x * x - 2.0 * mass * x * x * x;
    return -std::expm1(-0.5 * std::log1p(delta)) / x;
  };
  // The integrand is analytic on [0, 1/r]; a few bisections suffice and a
  // tighter tolerance only chases rounding in the error estimate.
  const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, 1.0 / r, 8, 1e-14);
  return std::log(2.0 * r) + tail;
}

// phi = 1 + rho^3 psi / 3 + rho^p chi and its derivatives
struct ConformalJet {
  double phi, phi_r, phi_rr, phi_t, lap;
};

ConformalJet perturbed_jet(const PerturbedRound& p, double rho, double theta) {
  const double r3 = rho * rho * rho;
  ConformalJet j{1.0 + r3 * p.psi.value(theta) / 3.0, rho * rho * p.psi.value(theta),
                 2.0 * rho * p.psi.value(theta), r3 * p.psi.d_theta(theta) / 3.0,
                 r3 * p.psi.laplacian(theta) / 3.0};
  if (p.remainder) {
    const double k = p.remainder->power;
    const auto& chi = p.remainder->profile;
    const double c = chi.value(theta);
    j.phi += std::pow(rho, k) * c;
    j.phi_r += k * std::pow(rho, k - 1.0) * c;
    j.phi_rr += k * (k - 1.0) * std::pow(rho, k - 2.0) * c;
    j.phi_t += std::pow(rho, k) * chi.d_theta(theta);
    j.lap += std::pow(rho, k) * chi.laplacian(theta);
  }
  return j;
}

}  // namespace

AHFamily::AHFamily(FamilyVariant v, double rho_max) : variant_(std::move(v)), rho_max_(rho_max) {
  if (!(rho_max > 0.0)) throw DomainError("AHFamily: rho_max must be positive");
}

AHFamily AHFamily::hyperbolic(double rho_max) { return AHFamily(Hyperbolic{}, rho_max); }

AHFamily AHFamily::ads_schwarzschild(double mass, double rho_max) {
  if (!(mass >= 0.0)) throw DomainError("AdS-Schwarzschild: mass must be non-negative");
  AHFamily f(AdSSchwarzschild{mass}, rho_max);
  // the collar must reach rho_max outside the horizon
  (void)ads_collar_transform(mass, rho_max);
  return f;
}

AHFamily AHFamily::perturbed_round(LegendreSeries psi, std::optional<ConformalRemainder> remainder,
                                   double rho_max) {
  AHFamily f(PerturbedRound{std::move(psi), std::move(remainder)}, rho_max);
  const auto& p = std::get<PerturbedRound>(f.variant_);
  // pole regularity of psi: d psi / d theta vanishes at both poles
  for (double pole : {0.0, std::numbers::pi}) {
    const double scale = 1.0 + p.psi.sup_bound();
    if (std::abs(p.psi.d_theta(pole)) > 1e-12 * scale) {
      throw DomainError("PerturbedRound: psi is not smooth at the poles");
    }
  }
  if (p.remainder && !(p.remainder->power > 0.0)) {
    throw DomainError("PerturbedRound: remainder power must be positive");
  }
  // h_rho positive definite on the collar
  const double bound = std::pow(rho_max, 3) * p.psi.sup_bound() / 3.0 +
                       (p.remainder ? std::pow(rho_max, p.remainder->power) *
                                          p.remainder->profile.sup_bound()
                                    : 0.0);
  if (bound >= 1.0) throw DomainError("PerturbedRound: h_rho may degenerate inside the collar");
  return f;
}

std::string AHFamily::name() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Hyperbolic&) { os << "hyperbolic"; },
                 [&](const AdSSchwarzschild& a) { os << "ads_schwarzschild(m=" << a.mass << ")"; },
                 [&](const PerturbedRound& p) {
                   os << "perturbed_round(psi=[";
                   for (std::size_t i = 0; i < p.psi.coefficients().size(); ++i) {
                     os << (i ? "," : "") << p.psi.coefficients()[i];
                   }
                   os << "]" << (p.remainder ? ",e" : "") << ")";
                 },
             },
             variant_);
  return os.str();
}

void AHFamily::check_rho(double rho) const {
  if (!(rho > 0.0) || rho > rho_max_) {
    std::ostringstream os;
    os << "rho = " << rho << " outside the collar (0, " << rho_max_ << "]";
    throw DomainError(os.str());
  }
}

CollarSlice AHFamily::slice(double rho) const { return CollarSlice(*this, rho); }

CollarSlice::CollarSlice(const AHFamily& family, double rho)
    : family_(family), rho_(rho), r_(1.0 / std::sinh(rho)) {
  family.check_rho(rho);
  if (const auto* a = std::get_if<AdSSchwarzschild>(&family_.variant())) {
    r_ = ads_collar_transform(a->mass, rho);
  }
}

double CollarSlice::phi(double theta) const {
  return std::visit(Overloaded{
                        [](const Hyperbolic&) { return 1.0; },
                        [&](const AdSSchwarzschild&) {
                          const double q = r_ * std::sinh(rho_);
                          return q * q;
                        },
                        [&](const PerturbedRound& p) { return perturbed_jet(p, rho_, theta).phi; },
                    },
                    family_.variant());
}

double CollarSlice::dphi_drho(double theta) const {
  return std::visit(Overloaded{
                        [](const Hyperbolic&) { return 0.0; },
                        [&](const AdSSchwarzschild& a) {
                          // r' = -sqrt(V) / sinh(rho)
                          const double sv = std::sqrt(ads_lapse_squared(a.mass, r_));
                          const double s = std::sinh(rho_);
                          return -2.0 * r_ * sv * s + 2.0 * r_ * r_ * s * std::cosh(rho_);
                        },
                        [&](const PerturbedRound& p) { return perturbed_jet(p, rho_, theta).phi_r; },
                    },
                    family_.variant());
}

double CollarSlice::d2phi_drho2(double theta) const {
  return std::visit(Overloaded{
                        [](const Hyperbolic&) { return 0.0; },
                        [&](const AdSSchwarzschild& a) {
                          const double v = ads_lapse_squared(a.mass, r_);
                          const double dv = 2.0 * r_ + 2.0 * a.mass / (r_ * r_);
                          return 2.0 * v + r_ * dv - 6.0 * r_ * std::sqrt(v) * std::cosh(rho_) +
                                 2.0 * r_ * r_ * std::cosh(2.0 * rho_);
                        },
                        [&](const PerturbedRound& p) { return perturbed_jet(p, rho_, theta).phi_rr; },
                    },
                    family_.variant());
}

CollarSample metric_at(const AHFamily& family, double rho, const QuadratureGrid& grid) {
  const CollarSlice slice = family.slice(rho);
  CollarSample out;
  out.rho = rho;
  const int n = grid.size();
  for (auto* v : {&out.h_thth, &out.h_thph, &out.h_phph, &out.g_rhorho, &out.g_thth,
                  &out.g_thph, &out.g_phph}) {
    v->assign(n, 0.0);
  }
  const double s = std::sinh(rho);
  const double inv_s2 = 1.0 / (s * s);
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double phi = slice.phi(grid.theta(i));
    if (!(phi > 0.0)) throw DomainError("metric_at: h_rho is not positive definite");
    const double sin2 = grid.sin_theta(i) * grid.sin_theta(i);
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = grid.index(i, j);
      out.h_thth[k] = phi;
      out.h_phph[k] = phi * sin2;
      out.g_rhorho[k] = inv_s2;
      out.g_thth[k] = phi * inv_s2;
      out.g_phph[k] = phi * sin2 * inv_s2;
    }
  }
  return out;
}

double ads_collar_residual(double mass, double rho, double r) {
  return ads_collar_phi(mass, r) + std::log(std::tanh(0.5 * rho));
}

double ads_collar_transform(double mass, double rho) {
  if (!(mass >= 0.0)) throw DomainError("ads_collar_transform: mass must be non-negative");
  if (!(rho > 0.0)) throw DomainError("ads_collar_transform: rho must be positive");
  if (mass == 0.0) return 1.0 / std::sinh(rho);

  const double target = -std::log(std::tanh(0.5 * rho));
  const double r_h = ads_horizon(mass);
  double lo = r_h * (1.0 + 1e-12);
  if (ads_collar_phi(mass, lo) > target) {
    throw DomainError("ads_collar_transform: no collar root outside the horizon");
  }
  double hi = std::max(1.0 / std::sinh(rho), 2.0 * lo);
  while (ads_collar_phi(mass, hi) < target) hi *= 2.0;

  double r = std::clamp(1.0 / std::sinh(rho), lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = ads_collar_phi(mass, r) - target;
    if (f > 0.0) hi = r; else lo = r;
    if (std::abs(f) <= 1e-15 * std::max(1.0, target)) return r;
    // dPhi/dr = 1/sqrt(V)
    double next = r - f * std::sqrt(ads_lapse_squared(mass, r));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-16 * r) return next;
    r = next;
  }
  const double res = ads_collar_residual(mass, rho, r);
  if (std::abs(res) > 1e-12 * std::max(1.0, target)) {
    throw DomainError("ads_collar_transform: root finding did not converge");
  }
  return r;
}

CollarFit ads_trace_fit(double mass, double rho_lo, double rho_hi) {
  if (!(rho_lo > 0.0 && rho_hi > rho_lo)) throw DomainError("ads_trace_fit: bad window");
  constexpr int kSamples = 9;
  constexpr int kDegree = 4;
  Eigen::MatrixXd a(kSamples, kDegree + 1);
  Eigen::VectorXd y(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const double rho = rho_lo + (rho_hi - rho_lo) * k / (kSamples - 1);
    const double q = ads_collar_transform(mass, rho) * std::sinh(rho);
    // h_rho / h0 - 1 = (q - 1)(q + 1); rho^3/3 tr h / 2 is its leading term
    y(k) = 6.0 * (q - 1.0) * (q + 1.0) / (rho * rho * rho);
    for (int d = 0; d <= kDegree; ++d) a(k, d) = std::pow(rho, d);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  CollarFit fit;
  fit.trace = c(0);
  const double rms = std::sqrt((a * c - y).squaredNorm() / kSamples);
  fit.residual = rms / std::max(std::abs(fit.trace), 1e-300);
  return fit;
}

MassAspect mass_aspect(const AHFamily& family, const QuadratureGrid& grid) {
  const int n = grid.size();
  MassAspect h;
  h.h_thth.assign(n, 0.0);
  h.h_thph.assign(n, 0.0);
  h.h_phph.assign(n, 0.0);
  h.trace.assign(n, 0.0);
  // conformal aspect: h = (tr/2) h0
  auto fill = [&](auto&& half_trace) {
    for (int i = 0; i < grid.n_theta(); ++i) {
      const double psi = half_trace(grid.theta(i));
      const double sin2 = grid.sin_theta(i) * grid.sin_theta(i);
      for (int j = 0; j < grid.n_phi(); ++j) {
        const int k = grid.index(i, j);
        h.h_thth[k] = psi;
        h.h_phph[k] = psi * sin2;
        h.trace[k] = 2.0 * psi;
      }
    }
  };
  std::visit(Overloaded{
                 [](const Hyperbolic&) {},
                 [&](const AdSSchwarzschild& a) {
                   if (a.mass == 0.0) return;
                   const CollarFit fit = ads_trace_fit(a.mass);
                   if (fit.residual > 1e-6) {
                     throw DomainError("mass_aspect: collar fit residual too large");
                   }
                   fill([&](double) { return 0.5 * fit.trace; });
                 },
                 [&](const PerturbedRound& p) { fill([&](double th) { return p.psi.value(th); }); },
             },
             family.variant());
  return h;
}

MinkowskiVector wang_mass(const MassAspect& aspect, const QuadratureGrid& grid) {
  if (static_cast<int>(aspect.trace.size()) != grid.size()) {
    throw DomainError("wang_mass: aspect does not match the grid");
  }
  MinkowskiVector acc;
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const double w = grid.weight_theta(i) * grid.weight_phi();
      const double tr = aspect.trace[grid.index(i, j)];
      const double s = grid.sin_theta(i);
      acc.x1 += w * tr * s * std::cos(grid.phi(j));
      acc.x2 += w * tr * s * std::sin(grid.phi(j));
      acc.x3 += w * tr * grid.cos_theta(i);
      acc.t += w * tr;
    }
  }
  return acc * (1.0 / (16.0 * std::numbers::pi));
}

double scalar_curvature(const AHFamily& family, double rho, double theta) {
  family.check_rho(rho);
  const auto* p = std::get_if<PerturbedRound>(&family.variant());
  if (p == nullptr) return -6.0;  // hyperbolic space and AdS-Schwarzschild are Einstein
  // g = sinh^{-2} rho (d rho^2 + phi h0) is conformal to g^ = d rho^2 + phi h0:
  //   R_g^ = (2 - Delta_h0 log phi) / phi - (3/2) (phi_r/phi)^2 - 2 d/drho (phi_r/phi)
  //   R_g  = sinh^2 rho R_g^ - 4 + 4 sinh rho cosh rho phi_r/phi - 2 cosh^2 rho
  const ConformalJet j = perturbed_jet(*p, rho, theta);
  const double lr = j.phi_r / j.phi;
  const double lap_log = j.lap / j.phi - (j.phi_t * j.phi_t) / (j.phi * j.phi);
  const double r_hat =
      (2.0 - lap_log) / j.phi - 1.5 * lr * lr - 2.0 * (j.phi_rr / j.phi - lr * lr);
  const double s = std::sinh(rho);
  const double c = std::cosh(rho);
  return s * s * r_hat - 4.0 + 4.0 * s * c * lr - 2.0 * c * c;
}

RemainderCheck validate_remainder(const AHFamily& family, double bound, double rho_min,
                                  double rho_max) {
  if (!(rho_min > 0.0 && rho_max > rho_min)) throw DomainError("validate_remainder: bad range");
  RemainderCheck out;
  const auto* p = std::get_if<PerturbedRound>(&family.variant());
  if (p == nullptr || !p->remainder) return out;
  const auto& e = *p->remainder;
  constexpr int kRho = 20;
  constexpr int kTheta = 33;
  for (int k = 0; k < kRho; ++k) {
    const double rho = rho_min * std::pow(rho_max / rho_min, static_cast<double>(k) / (kRho - 1));
    const double scale = std::pow(rho, e.power) / std::pow(rho, 4.0);
    for (int i = 0; i < kTheta; ++i) {
      const double th = std::numbers::pi * i / (kTheta - 1);
      const double c = std::abs(e.profile.value(th));
      for (double v : {c, e.power * c, std::abs(e.profile.d_theta(th)),
                       std::abs(e.profile.d2_theta(th))}) {
        out.max_ratio = std::max(out.max_ratio, scale * v);
      }
    }
  }
  out.ok = out.max_ratio <= bound;
  return out;
}

}  // namespace qlmass
