// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qlmass/ah_metric.hpp"
#include "qlmass/embed_h3.hpp"
#include "qlmass/fit.hpp"
#include "qlmass/killing_spinor.hpp"
#include "qlmass/quasilocal.hpp"
#include "qlmass/sphere_geometry.hpp"
#include "qlmass/sweep.hpp"
#include "qlmass/sweep_config.hpp"

using namespace qlmass;

namespace {

// Pinned tolerances.
constexpr double kZeroMass = 1e-8;
constexpr double kHyperbolicSeconds = 10.0;
constexpr double kAdSSeconds = 60.0;
constexpr double kAdSRelative = 0.01;
constexpr double kWangToMass = 1e-6;
constexpr double kSpatial = 1e-6;
constexpr double kClassBelow = 0.1;
constexpr double kMinGapOrder = 1.5;
constexpr double kStandardErrors = 3.0;
constexpr double kRoundingFloor = 1e-14;
constexpr double kTraceRelative = 0.02;
constexpr double kMinH0Order = 4.0;
constexpr double kMinKOrder = 4.5;
constexpr double kOrderFloor = 1e-10;
constexpr double kSpinorNorm = 1e-12;
constexpr double kGeodesic = 1e-10;
constexpr double kIdentity = 1e-7;
constexpr double kRefinementFloor = 1e-10;
constexpr double kGrowthSlack = 0.05;
constexpr double kRoundTrip = 1e-8;
constexpr double kIsometry = 1e-6;
constexpr double kHyperboloid = 1e-9;
constexpr double kEquivariance = 1e-10;
constexpr double kRoundBall = 1e-8;
constexpr double kPairing = 1e-12;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpinorParameter random_z(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {{g(rng), g(rng)}, {g(rng), g(rng)}};
}

std::vector<double> norm_values(const MinkowskiVector& eta, const EmbeddedSurface& emb) {
  std::vector<double> F;
  for (const auto& X : emb.X) F.push_back(-lorentz_inner(X, eta));
  return F;
}

AHFamily dipole() { return AHFamily::perturbed_round(LegendreSeries({0.0, 0.1})); }
AHFamily quadrupole() { return AHFamily::perturbed_round(LegendreSeries({0.0, 0.0, 0.1})); }

// Sweeps shared between criteria.
struct Sweeps {
  std::vector<MassSweepRecord> all;
  const MassSweepRecord* hyperbolic = nullptr;
  const MassSweepRecord* ads1 = nullptr;
  const MassSweepRecord* dipole = nullptr;
  const MassSweepRecord* quadrupole = nullptr;
  std::vector<double> ads_seconds;
  double hyperbolic_seconds = 0.0;
};

Sweeps& sweeps() {
  static Sweeps s = [] {
    Sweeps out;
    out.all.reserve(6);
    auto timed = [&](SweepConfig cfg, double* secs) {
      const auto t0 = std::chrono::steady_clock::now();
      out.all.push_back(run_sweep(cfg));
      if (secs) *secs = seconds_since(t0);
    };
    SweepConfig hyp = default_config(AHFamily::hyperbolic());
    hyp.alpha_auto = true;
    timed(hyp, &out.hyperbolic_seconds);
    for (double m : {0.5, 1.0, 2.0}) {
      SweepConfig cfg = default_config(AHFamily::ads_schwarzschild(m));
      cfg.alpha_auto = true;
      double secs = 0.0;
      timed(cfg, &secs);
      out.ads_seconds.push_back(secs);
    }
    SweepConfig dip = default_config(dipole());
    dip.spinor = {{1.0, 0.0}, {0.4, 0.3}};
    timed(dip, nullptr);
    SweepConfig quad = default_config(quadrupole());
    quad.spinor = dip.spinor;
    timed(quad, nullptr);
    out.hyperbolic = &out.all[0];
    out.ads1 = &out.all[2];
    out.dipole = &out.all[4];
    out.quadrupole = &out.all[5];
    return out;
  }();
  return s;
}

void criterion_vacuum(Outcome& o) {
  const Sweeps& s = sweeps();
  const MassSweepRecord& rec = *s.hyperbolic;
  double worst = 0.0;
  int ok = 0;
  for (const auto& r : rec.records) {
    if (!r.ok) continue;
    ++ok;
    worst = std::max({worst, r.mass.m_by.max_abs(), r.mass.m_hat.max_abs()});
    if (r.mass.m_alpha) worst = std::max(worst, r.mass.m_alpha->max_abs());
  }
  for (const auto* f : {&rec.by_limit, &rec.hat_limit, &rec.alpha_limit}) {
    if (*f) worst = std::max(worst, (*f)->limit.max_abs());
  }
  o.detail << "max |component| " << worst << ", " << ok << "/8 spheres, tag "
           << (rec.by_limit ? to_string(rec.by_limit->tag) : "none") << ", " << s.hyperbolic_seconds
           << " s";
  o.require(ok == 8 && rec.records.size() == 8, "all spheres computed");
  o.require(rec.n_theta == 64, "n_theta = 64");
  o.require(worst <= kZeroMass, "zero mass");
  o.require(rec.by_limit && rec.by_limit->tag == CausalClass::zero, "limit tag zero");
  o.require(rec.hat_limit && rec.hat_limit->tag == CausalClass::zero, "hat limit tag zero");
  o.require(s.hyperbolic_seconds < kHyperbolicSeconds, "runtime");
}

void criterion_ads(Outcome& o) {
  const Sweeps& s = sweeps();
  const double masses[] = {0.5, 1.0, 2.0};
  for (int k = 0; k < 3; ++k) {
    const double m = masses[k];
    const MassSweepRecord& rec = s.all[1 + k];
    const double wang = rec.wang_mass.t;
    o.require(std::abs(wang - m) <= kWangToMass, "wang oracle equals m");
    o.require(rec.wang_mass.spatial_norm() <= kWangToMass, "wang oracle spatial part");
    if (!rec.by_limit) {
      o.require(false, "limit fitted");
      continue;
    }
    const MinkowskiVector& lim = rec.by_limit->limit;
    const double rel = std::abs(lim.t - wang) / wang;
    const double spatial = std::max({std::abs(lim.x1), std::abs(lim.x2), std::abs(lim.x3)});
    bool tags = true;
    int counted = 0;
    for (const auto& r : rec.records) {
      if (r.epsilon > kClassBelow) continue;
      ++counted;
      tags = tags && r.ok && r.mass.by_class == CausalClass::future_timelike;
    }
    o.detail << "m=" << m << ": t " << lim.t << " (rel " << rel << "), spatial " << spatial << ", "
             << s.ads_seconds[k] << " s; ";
    o.require(rel <= kAdSRelative, "t within 1%");
    o.require(spatial <= kSpatial, "spatial components");
    o.require(counted > 0 && tags, "future-timelike for eps <= 0.1");
    o.require(s.ads_seconds[k] < kAdSSeconds, "runtime");
  }
}

void criterion_gap(Outcome& o) {
  const Sweeps& s = sweeps();
  for (const auto* rec : {s.ads1, s.dipole}) {
    o.detail << rec->family << ": gap order "
             << (rec->gap_order ? std::to_string(*rec->gap_order) : std::string("none"));
    o.require(rec->gap_order && *rec->gap_order >= kMinGapOrder, "gap decay order");
    if (!rec->by_limit || !rec->hat_limit) {
      o.require(false, "limits fitted");
      continue;
    }
    double worst = 0.0;
    for (int c = 0; c < 4; ++c) {
      const LimitFit& a = rec->by_limit->components[c];
      const LimitFit& b = rec->hat_limit->components[c];
      const double diff = std::abs(a.limit - b.limit);
      if (diff <= kRoundingFloor) continue;
      const double se = std::hypot(a.limit_se, b.limit_se);
      worst = std::max(worst, se > 0.0 ? diff / se : INFINITY);
    }
    o.detail << ", limit difference " << worst << " SE; ";
    o.require(worst <= kStandardErrors, "limits within 3 standard errors");
  }
}

// Order above the rounding floor of a deviation that scales like sinh^2 eps or 1.
std::optional<double> floored_order(const std::vector<double>& eps, const std::vector<double>& dev,
                                    bool scale_by_area) {
  std::vector<double> floors;
  for (double e : eps) floors.push_back(kOrderFloor * (scale_by_area ? std::sinh(e) * std::sinh(e) : 1.0));
  return decay_order_above_floor(eps, dev, floors);
}

void criterion_expansions(Outcome& o) {
  const QuadratureGrid grid(32, 4);
  const std::vector<double> eps = geometric_schedule(0.2, std::sqrt(0.5), 8);
  const std::vector<std::pair<std::string, AHFamily>> fams{
      {"ads(1)", AHFamily::ads_schwarzschild(1.0)}, {"dipole", dipole()}, {"quadrupole", quadrupole()}};
  for (const auto& [name, fam] : fams) {
    const MassAspect aspect = mass_aspect(fam, grid);
    double scale = 0.0;
    for (double t : aspect.trace) scale = std::max(scale, std::abs(t) / 2);
    std::vector<std::vector<double>> ratio(grid.size());
    std::vector<double> h0_dev, k_dev;
    for (double e : eps) {
      const SurfaceSample surf = coordinate_sphere(fam, e, grid);
      const EmbeddedSurface emb = embed_coordinate_sphere(fam, e, grid);
      double h0 = 0.0, kd = 0.0;
      for (int n = 0; n < grid.size(); ++n) {
        ratio[n].push_back((2 * std::cosh(e) - surf.H[n]) / (e * e * e));
        h0 = std::max(h0, std::abs(emb.H0[n] - 2 * std::cosh(e)));
        kd = std::max(kd, std::abs(surf.K[n] - std::sinh(e) * std::sinh(e)));
      }
      h0_dev.push_back(h0);
      k_dev.push_back(kd);
    }
    double trace_err = 0.0;
    for (int n = 0; n < grid.size(); ++n) {
      const LimitFit f = richardson_limit(eps, ratio[n], 1.0);
      trace_err = std::max(trace_err, std::abs(f.limit - aspect.trace[n] / 2) / scale);
    }
    const auto p_h0 = floored_order(eps, h0_dev, false);
    const auto p_k = floored_order(eps, k_dev, true);
    auto show = [](const std::optional<double>& p) {
      return p ? std::to_string(*p) : std::string("at rounding");
    };
    o.detail << name << ": trace rel " << trace_err << ", H0 order " << show(p_h0) << ", K order "
             << show(p_k) << "; ";
    o.require(trace_err <= kTraceRelative, name + " trace");
    o.require(!p_h0 || *p_h0 >= kMinH0Order, name + " H0 order");
    o.require(!p_k || *p_k >= kMinKOrder, name + " K order");
  }
  // At least one family must measure both orders above the floor.
  const MassSweepRecord& q = *sweeps().quadrupole;
  std::vector<double> e, h0, kd;
  for (const auto& r : q.records) {
    e.push_back(r.epsilon);
    h0.push_back(r.H0_deviation);
    kd.push_back(r.K_deviation);
  }
  const auto ph = floored_order(e, h0, false);
  const auto pk = floored_order(e, kd, true);
  o.require(ph && *ph >= kMinH0Order && pk && *pk >= kMinKOrder, "quadrupole sweep orders measured");
}

void criterion_spinor(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;

  double norm_worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const SpinorParameter z = random_z(rng);
    const double r = 3 * u(rng), th = M_PI * u(rng), ph = 2 * M_PI * u(rng);
    const double n2 = spinor_norm_squared(spinor_at(z, r, th, ph));
    const double F = norm_field_at(KillingNormField(z), spinor_chart_point(r, th, ph));
    norm_worst = std::max(norm_worst, std::abs(n2 - F) / std::max(1.0, F));
  }

  std::vector<double> ts;
  for (int k = 0; k <= 20; ++k) ts.push_back(-2.0 + 0.2 * k);
  double geo_worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const KillingNormField f(random_z(rng));
    const MinkowskiVector X0 = hyperboloid_point(1.5 * u(rng), M_PI * u(rng), 2 * M_PI * u(rng));
    MinkowskiVector a{g(rng), g(rng), g(rng), g(rng)};
    a += lorentz_inner(a, X0) * X0;
    a *= 1.0 / std::sqrt(lorentz_inner(a, a));
    geo_worst = std::max(geo_worst, geodesic_norm_check(f, X0, a, ts).max_residual);
  }

  const QuadratureGrid grid(32, 8);
  double id_worst = 0.0;
  for (double R : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (int k = 0; k < 4; ++k) {
      const KillingNormField f(random_z(rng));
      id_worst = std::max(id_worst, minkowski_identity_residual(f, geodesic_sphere(R, grid),
                                                                embed_round(R, grid), grid));
    }
  }

  const std::vector<int> ladder{6, 8, 10, 12, 16, 24, 32};
  const RefinementStudy st =
      minkowski_refinement_study(KillingNormField({{1.0, 0.0}, {0.4, 0.3}}),
                                 AHFamily::perturbed_round(LegendreSeries({0.0, 0.0, 1.0})), 0.4,
                                 ladder, 4, kRefinementFloor, kIdentity);

  const GrowthFit growth =
      exhaustion_norm_growth(KillingNormField({1.0, 0.0}), AHFamily::hyperbolic(),
                             geometric_schedule(0.2, std::sqrt(0.5), 8), QuadratureGrid(16, 4));

  o.detail << "norm " << norm_worst << ", geodesic " << geo_worst << ", round identity " << id_worst
           << ", refinement " << st.residuals.front() << " -> "
           << (st.converged_at >= 0 ? st.residuals[st.converged_at] : st.residuals.back())
           << " at n_theta " << (st.converged_at >= 0 ? st.n_theta[st.converged_at] : -1)
           << ", growth order " << growth.order;
  o.require(norm_worst <= kSpinorNorm, "norm identity");
  o.require(geo_worst <= kGeodesic, "geodesic fit");
  o.require(id_worst <= kIdentity, "identity on geodesic spheres");
  o.require(st.spectral, "spectral refinement");
  o.require(std::abs(growth.order - 1.0) <= kGrowthSlack, "growth exponent");
}

void criterion_embedding(Outcome& o) {
  const QuadratureGrid grid(32, 4);
  double node_worst = 0.0, h0_worst = 0.0;
  for (double R : {0.2, 0.5, 1.0, 2.0, 3.0}) {
    const double s2 = std::sinh(R) * std::sinh(R);
    const RevolutionMetric round{[s2](double) { return s2; }, [s2](double) { return s2; }};
    const RevolutionProfile p = embed_revolution(round, grid);
    const EmbeddedSurface e = embedded_surface(p, grid);
    const EmbeddedSurface ref = embed_round(R, grid);
    for (std::size_t k = 0; k < e.X.size(); ++k) {
      node_worst = std::max(node_worst, (e.X[k] - ref.X[k]).max_abs());
    }
    for (double h : mean_curvature_h0(p)) h0_worst = std::max(h0_worst, std::abs(h - 2 / std::tanh(R)));
  }

  double iso = 0.0, hyp = 0.0;
  int accepted = 0;
  for (const auto& rec : sweeps().all) {
    for (const auto& r : rec.records) {
      if (!r.ok) continue;
      ++accepted;
      iso = std::max(iso, r.isometry_residual);
      hyp = std::max(hyp, r.hyperboloid_residual);
    }
  }
  const QuadratureGrid fine(64, 4);
  for (const auto& psi : {LegendreSeries({0.0, 0.5, 1.0}), LegendreSeries({0.2, -0.3, 0.0, 0.4})}) {
    const AHFamily fam = AHFamily::perturbed_round(psi);
    for (double e : {0.05, 0.2, 0.4}) {
      const RevolutionProfile p = embed_revolution(coordinate_sphere_metric(fam, e), fine);
      ++accepted;
      iso = std::max(iso, p.isometry_residual);
      hyp = std::max(hyp, p.hyperboloid_residual);
    }
  }
  o.detail << "round-trip " << node_worst << ", H0 " << h0_worst << "; " << accepted
           << " accepted embeddings: isometry " << iso << ", hyperboloid " << hyp;
  o.require(node_worst <= kRoundTrip, "round-trip nodes");
  o.require(h0_worst <= kRoundTrip, "round-trip H0");
  o.require(iso <= kIsometry, "isometry residual");
  o.require(hyp <= kHyperboloid, "hyperboloid residual");
}

void criterion_equivariance(Outcome& o) {
  const QuadratureGrid grid(32, 4);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  bool tags = true;
  for (const auto& fam : {AHFamily::ads_schwarzschild(1.0),
                          AHFamily::perturbed_round(LegendreSeries({0.0, 0.3, 0.2}))}) {
    const SurfaceSample s = coordinate_sphere(fam, 0.1, grid);
    const EmbeddedSurface e = embed_coordinate_sphere(fam, 0.1, grid);
    const MinkowskiVector m = by_mass(s, e, grid);
    const MinkowskiVector h = hat_mass(s, e, grid);
    for (int k = 0; k < 20; ++k) {
      const LorentzMap L = LorentzMap::rotation(1, 3 * u(rng)) * LorentzMap::boost(2, u(rng)) *
                           LorentzMap::boost(0, u(rng));
      const EmbeddedSurface b = boost_surface(L, e);
      const double scale = L.matrix().cwiseAbs().maxCoeff() * std::max(m.max_abs(), h.max_abs());
      const MinkowskiVector mb = by_mass(s, b, grid), hb = hat_mass(s, b, grid);
      worst = std::max({worst, (mb - L(m)).max_abs() / scale, (hb - L(h)).max_abs() / scale});
      tags = tags && causal_classify(mb) == causal_classify(m) && causal_classify(hb) == causal_classify(h);
    }
  }

  int checked = 0, disagree = 0;
  auto check = [&](const MinkowskiVector& v) {
    ++checked;
    if (cone_pairing_report(v, 1024).tag != causal_classify(v)) ++disagree;
  };
  for (const auto& rec : sweeps().all) {
    for (const auto& r : rec.records) {
      if (!r.ok) continue;
      check(r.mass.m_by);
      check(r.mass.m_hat);
      if (r.mass.m_alpha) check(*r.mass.m_alpha);
    }
    for (const auto* f : {&rec.by_limit, &rec.hat_limit, &rec.alpha_limit}) {
      if (*f) check((*f)->limit);
    }
  }
  o.detail << "relative equivariance error " << worst << ", tags " << (tags ? "invariant" : "changed")
           << ", cone tags " << checked - disagree << "/" << checked << " agree";
  o.require(worst <= kEquivariance, "equivariance");
  o.require(tags, "tags invariant");
  o.require(disagree == 0, "cone tag agreement");
}

void criterion_round_ball(Outcome& o) {
  const QuadratureGrid grid(32, 8);
  std::mt19937_64 rng(31);
  double functional = 0.0, pairing = 0.0;
  for (double R : {0.3, 0.8, 1.5, 2.5, 4.0}) {
    const SurfaceSample s = geodesic_sphere(R, grid);
    const EmbeddedSurface e = embed_round(R, grid);
    const MinkowskiVector hat = hat_mass(s, e, grid);
    for (int k = 0; k < 20; ++k) {
      const MinkowskiVector eta = hopf_eta(random_z(rng));
      functional = std::max(functional, std::abs(mainhyp_functional(s, e, norm_values(eta, e), grid)));
      pairing = std::max(pairing, std::abs(lorentz_inner(hat, eta)));
    }
  }
  o.detail << "max |functional| " << functional << ", max |<<hat, eta>>| " << pairing;
  o.require(functional <= kRoundBall, "functional vanishes");
  o.require(pairing <= kPairing, "hat mass pairs to zero");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"vacuum zero mass", criterion_vacuum},
      {"AdS-Schwarzschild reproduction", criterion_ads},
      {"hat/Brown-York gap and limits", criterion_gap},
      {"mean curvature and Gauss curvature expansions", criterion_expansions},
      {"spinor identity suite", criterion_spinor},
      {"embedding solver", criterion_embedding},
      {"equivariance and causality", criterion_equivariance},
      {"round-ball equality", criterion_round_ball},
  };
  try {
    sweeps();
  } catch (const std::exception& e) {
    std::printf("sweeps failed: %s\n", e.what());
  }
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    o.detail.precision(4);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("%s [%zu] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
