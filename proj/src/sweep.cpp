#include "qlmass/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "qlmass/ah_metric.hpp"
#include "qlmass/embed_h3.hpp"
#include "qlmass/errors.hpp"
#include "qlmass/killing_spinor.hpp"
#include "qlmass/sphere_geometry.hpp"

namespace qlmass {

namespace {

std::string format_eps(double eps) {
  std::ostringstream os;
  os.precision(6);
  os << eps;
  return os.str();
}

double max_abs_diff(const std::vector<double>& v, double ref) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - ref));
  return m;
}

EpsilonRecord evaluate_epsilon(const SweepConfig& cfg, const QuadratureGrid& grid,
                               const EmbedOptions& opts, const KillingNormField& field,
                               double eps) {
  EpsilonRecord r;
  r.epsilon = eps;
  try {
    const SurfaceSample surf = coordinate_sphere(cfg.family, eps, grid);
    if (!embeddability_check(surf)) {
      throw EmbeddingError("Gauss curvature reaches -1; no embedding into H^3");
    }
    const EmbeddedSurface emb = embed_coordinate_sphere(cfg.family, eps, grid, opts);
    if (emb.hyperboloid_residual > cfg.tolerances.hyperboloid) {
      throw EmbeddingError("hyperboloid constraint violated");
    }

    std::optional<double> alpha = cfg.alpha;
    if (cfg.alpha_auto) {
      double r1 = std::numeric_limits<double>::infinity(), r2 = 0.0;
      for (const auto& x : emb.X) {
        const double d = std::acosh(std::max(1.0, x.t));
        r1 = std::min(r1, d);
        r2 = std::max(r2, d);
      }
      alpha = alpha_from_radii(r1, r2);
    }
    r.mass = mass_result(surf, emb, grid, alpha);
    r.alpha = alpha.value_or(0.0);

    const std::vector<double> ones(grid.size(), 1.0);
    r.area = integrate_scalar(surf, ones, grid);
    const auto [hmin, hmax] = std::minmax_element(surf.H.begin(), surf.H.end());
    const auto [kmin, kmax] = std::minmax_element(surf.K.begin(), surf.K.end());
    r.H_min = *hmin;
    r.H_max = *hmax;
    r.K_min = *kmin;
    r.K_max = *kmax;
    const double two_cosh = 2.0 * std::cosh(eps);
    const double sh = std::sinh(eps);
    r.H_deviation = max_abs_diff(surf.H, two_cosh);
    r.H0_deviation = max_abs_diff(emb.H0, two_cosh);
    r.K_deviation = max_abs_diff(surf.K, sh * sh);
    r.isometry_residual = emb.isometry_residual;
    r.hyperboloid_residual = emb.hyperboloid_residual;

    const std::vector<double> F = norm_field_values(field, emb);
    r.max_norm = *std::max_element(F.begin(), F.end());
    r.minkowski_residual = minkowski_identity_residual(field, surf, emb, grid);
    r.laplacian_term = laplacian_term(surf, F, grid);
    r.hat_by_gap = (r.mass.m_hat - r.mass.m_by).max_abs();
    r.ok = true;
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

bool tag_matches_cone(const MinkowskiVector& v, int n, std::optional<double> tol) {
  const CausalClass tag = tol ? causal_classify(v, *tol) : causal_classify(v);
  return cone_pairing_report(v, n, tol).tag == tag;
}

}  // namespace

std::vector<std::array<double, 3>> fibonacci_sphere(int n) {
  std::vector<std::array<double, 3>> pts(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double ang = golden * k;
    pts[k] = {rad * std::cos(ang), rad * std::sin(ang), z};
  }
  return pts;
}

ConePairing cone_pairing_report(const MinkowskiVector& v, int n_samples, std::optional<double> tol) {
  if (n_samples < 1) throw DomainError("cone_pairing_report: need at least one sample");
  ConePairing out;
  out.max_pairing = -std::numeric_limits<double>::infinity();
  out.min_pairing = std::numeric_limits<double>::infinity();
  auto visit = [&](double x, double y, double z) {
    const double p = lorentz_inner(v, MinkowskiVector{x, y, z, 1.0});
    out.max_pairing = std::max(out.max_pairing, p);
    out.min_pairing = std::min(out.min_pairing, p);
  };
  for (const auto& w : fibonacci_sphere(n_samples)) visit(w[0], w[1], w[2]);
  // The pairing is affine in the direction; its extremes sit at +-v_spatial.
  const double s = v.spatial_norm();
  if (s > 0.0) {
    visit(v.x1 / s, v.x2 / s, v.x3 / s);
    visit(-v.x1 / s, -v.x2 / s, -v.x3 / s);
  }

  // sup * inf = -<<v,v>> and sup + inf = -2 v_t.
  const double tau = tol ? *tol : default_causal_tolerance(v);
  const double q = -out.max_pairing * out.min_pairing;
  const double t = -0.5 * (out.max_pairing + out.min_pairing);
  const double size = std::max(std::abs(out.max_pairing), std::abs(out.min_pairing));
  if (size <= tau) {
    out.tag = CausalClass::zero;
  } else if (q > tau) {
    out.tag = CausalClass::spacelike;
  } else if (q < -tau) {
    out.tag = t > 0.0 ? CausalClass::future_timelike : CausalClass::past_timelike;
  } else {
    out.tag = t > 0.0 ? CausalClass::future_null : CausalClass::past_null;
  }
  return out;
}

FittedVector fit_vector(const std::vector<double>& eps, const std::vector<MinkowskiVector>& v,
                        int eta_samples, std::optional<double> tol) {
  FittedVector out;
  for (int c = 0; c < 4; ++c) {
    std::vector<double> values(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) values[i] = v[i][c];
    out.components[c] = fit_limit(eps, values);
    out.limit[c] = out.components[c].limit;
    out.standard_error[c] = out.components[c].limit_se;
  }
  out.tag = tol ? causal_classify(out.limit, *tol) : causal_classify(out.limit);
  out.cone = cone_pairing_report(out.limit, eta_samples, tol);
  out.tags_agree = out.cone.tag == out.tag;
  return out;
}

MassSweepRecord run_sweep(const SweepConfig& cfg) {
  const QuadratureGrid grid(cfg.n_theta, cfg.n_phi);
  MassSweepRecord rec;
  rec.family = cfg.family.name();
  rec.source = cfg.source;
  rec.n_theta = cfg.n_theta;
  rec.n_phi = cfg.n_phi;
  rec.wang_mass = wang_mass(mass_aspect(cfg.family, grid), grid);

  EmbedOptions opts;
  opts.branch = cfg.branch;
  opts.tolerance = cfg.tolerances.ode;
  opts.interpolation_nodes = cfg.interpolation_nodes;
  opts.residual_tolerance = cfg.tolerances.isometry;
  const KillingNormField field(cfg.spinor);

  std::vector<std::future<EpsilonRecord>> jobs;
  for (double eps : cfg.epsilons) {
    jobs.push_back(std::async(std::launch::async, [&, eps] {
      return evaluate_epsilon(cfg, grid, opts, field, eps);
    }));
  }
  for (auto& j : jobs) rec.records.push_back(j.get());
  std::sort(rec.records.begin(), rec.records.end(),
            [](const EpsilonRecord& a, const EpsilonRecord& b) { return a.epsilon < b.epsilon; });

  const auto tol = cfg.tolerances.causal;
  std::vector<double> ok_eps;
  std::vector<int> ok_index;
  for (int i = 0; i < static_cast<int>(rec.records.size()); ++i) {
    const auto& r = rec.records[i];
    if (!r.ok) {
      rec.failures.push_back("epsilon " + format_eps(r.epsilon) + ": " + r.error);
      continue;
    }
    ok_eps.push_back(r.epsilon);
    ok_index.push_back(i);
    bool agree = tag_matches_cone(r.mass.m_by, cfg.eta_samples, tol) &&
                 tag_matches_cone(r.mass.m_hat, cfg.eta_samples, tol);
    if (r.mass.m_alpha) agree = agree && tag_matches_cone(*r.mass.m_alpha, cfg.eta_samples, tol);
    rec.tags_agree = rec.tags_agree && agree;
  }

  if (ok_eps.size() >= 3) {
    std::vector<int> order(ok_eps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ok_eps[a] < ok_eps[b]; });
    order.resize(std::max<std::size_t>(3, smallest_half(ok_eps).size()));
    for (int k : order) rec.fit_indices.push_back(ok_index[k]);
    std::vector<double> eps;
    std::vector<MinkowskiVector> by, hat, alpha;
    for (int i : rec.fit_indices) {
      const auto& r = rec.records[i];
      eps.push_back(r.epsilon);
      by.push_back(r.mass.m_by);
      hat.push_back(r.mass.m_hat);
      if (r.mass.m_alpha) alpha.push_back(*r.mass.m_alpha);
    }
    rec.by_limit = fit_vector(eps, by, cfg.eta_samples, tol);
    rec.hat_limit = fit_vector(eps, hat, cfg.eta_samples, tol);
    if (alpha.size() == eps.size()) rec.alpha_limit = fit_vector(eps, alpha, cfg.eta_samples, tol);
    rec.tags_agree = rec.tags_agree && rec.by_limit->tags_agree && rec.hat_limit->tags_agree &&
                     (!rec.alpha_limit || rec.alpha_limit->tags_agree);
    // Below this floor the gap is rounding noise and has no decay order.
    constexpr double kGapFloor = 1e-12;
    std::vector<double> ok_gaps;
    for (int i : ok_index) ok_gaps.push_back(rec.records[i].hat_by_gap);
    const std::vector<double> floors(ok_eps.size(), kGapFloor);
    rec.gap_order = decay_order_above_floor(ok_eps, ok_gaps, floors);
  } else {
    rec.failures.push_back("fewer than 3 successful epsilons; limits not fitted");
  }

  for (std::size_t k = 1; k < ok_index.size(); ++k) {
    const double prev = rec.records[ok_index[k - 1]].hat_by_gap;
    const double cur = rec.records[ok_index[k]].hat_by_gap;
    if (prev > cur + 1e-12 * std::max(1.0, cur)) rec.gap_monotone = false;
  }

  if (!rec.tags_agree) rec.failures.push_back("cone pairing tag disagrees with causal_classify");

  const auto& ex = cfg.expect;
  if (ex.zero_mass) {
    const double z = cfg.tolerances.zero_mass;
    bool zero = rec.wang_mass.max_abs() <= z;
    for (int i : ok_index) {
      zero = zero && rec.records[i].mass.m_by.max_abs() <= z &&
             rec.records[i].mass.m_hat.max_abs() <= z;
    }
    if (!zero) rec.failures.push_back("expected zero mass vectors");
    if (rec.by_limit && rec.by_limit->tag != CausalClass::zero) {
      rec.failures.push_back("expected the m_BY limit to be tagged zero");
    }
  }
  if (ex.limit_class && rec.by_limit) {
    if (rec.by_limit->tag != *ex.limit_class) {
      rec.failures.push_back("m_BY limit tagged " + std::string(to_string(rec.by_limit->tag)) +
                             ", expected " + std::string(to_string(*ex.limit_class)));
    }
    if (ex.class_below_epsilon) {
      for (int i : ok_index) {
        const auto& r = rec.records[i];
        if (r.epsilon <= *ex.class_below_epsilon && r.mass.by_class != *ex.limit_class) {
          rec.failures.push_back("epsilon " + format_eps(r.epsilon) + ": m_BY tagged " +
                                 std::string(to_string(r.mass.by_class)));
        }
      }
    }
  }
  if (ex.by_limit_t && rec.by_limit) {
    const MinkowskiVector& L = rec.by_limit->limit;
    if (std::abs(L.t - *ex.by_limit_t) > ex.relative_tolerance * std::abs(*ex.by_limit_t)) {
      rec.failures.push_back("m_BY limit t-component off the expected value");
    }
    if (std::max({std::abs(L.x1), std::abs(L.x2), std::abs(L.x3)}) > ex.spatial_tolerance) {
      rec.failures.push_back("m_BY limit spatial components above tolerance");
    }
  }
  if (ex.min_gap_order) {
    if (!rec.gap_order || *rec.gap_order < *ex.min_gap_order) {
      rec.failures.push_back("|m_hat - m_BY| decay order below the expected minimum");
    }
  }
  return rec;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

VerifyReport verify_identities(const SweepConfig& cfg) {
  VerifyReport rep;
  rep.family = cfg.family.name();
  const QuadratureGrid grid(cfg.n_theta, cfg.n_phi);
  const KillingNormField field(cfg.spinor);
  std::mt19937_64 rng(20260601);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto add = [&](std::string name, bool ok, double value, double tol, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, value, tol, std::move(detail)});
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, false, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what());
    }
  };
  auto random_z = [&] {
    return SpinorParameter{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
  };

  guarded("spinor_norm", [&] {
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const SpinorParameter z = random_z();
      const double r = 3.0 * unif(rng);
      const double th = std::numbers::pi * unif(rng);
      const double ph = 2.0 * std::numbers::pi * unif(rng);
      const double n2 = spinor_norm_squared(spinor_at(z, r, th, ph));
      const double F = norm_field_at(KillingNormField(z), spinor_chart_point(r, th, ph));
      worst = std::max(worst, std::abs(n2 - F) / std::max(1.0, F));
    }
    add("spinor_norm", worst <= cfg.tolerances.spinor, worst, cfg.tolerances.spinor,
        "relative, 10^4 random samples");
  });

  guarded("geodesic_exp_fit", [&] {
    std::vector<double> ts;
    for (int k = 0; k <= 20; ++k) ts.push_back(-2.0 + 0.2 * k);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const KillingNormField f(random_z());
      const MinkowskiVector X0 = hyperboloid_point(1.5 * unif(rng), std::acos(2.0 * unif(rng) - 1.0),
                                                   2.0 * std::numbers::pi * unif(rng));
      MinkowskiVector a{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
      a += lorentz_inner(a, X0) * X0;
      a *= 1.0 / std::sqrt(lorentz_inner(a, a));
      worst = std::max(worst, geodesic_norm_check(f, X0, a, ts).max_residual);
    }
    add("geodesic_exp_fit", worst <= cfg.tolerances.geodesic, worst, cfg.tolerances.geodesic,
        "100 random geodesics");
  });

  guarded("gradient_identity", [&] {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const KillingNormField f(random_z());
      const MinkowskiVector X = hyperboloid_point(3.0 * unif(rng), std::acos(2.0 * unif(rng) - 1.0),
                                                  2.0 * std::numbers::pi * unif(rng));
      const double F = f(X);
      worst = std::max(worst, gradient_identity_residual(f, X) / std::max(1.0, F * F));
    }
    add("gradient_identity", worst <= 1e-10, worst, 1e-10, "relative, 10^3 random points");
  });

  guarded("minkowski_identity_round", [&] {
    double worst = 0.0;
    for (double eps : cfg.epsilons) {
      const double R = std::asinh(1.0 / std::sinh(eps));
      worst = std::max(worst, minkowski_identity_residual(field, geodesic_sphere(R, grid),
                                                          embed_round(R, grid), grid));
    }
    add("minkowski_identity_round", worst <= cfg.tolerances.identity, worst,
        cfg.tolerances.identity, "geodesic spheres sinh R = 1/sinh eps");
  });

  EmbedOptions opts;
  opts.branch = cfg.branch;
  opts.tolerance = cfg.tolerances.ode;
  opts.interpolation_nodes = cfg.interpolation_nodes;
  opts.residual_tolerance = cfg.tolerances.isometry;

  guarded("minkowski_identity_refinement", [&] {
    const double eps = *std::max_element(cfg.epsilons.begin(), cfg.epsilons.end());
    std::vector<int> ladder{4, 6, 8, 10, 12, 16, 24, 32};
    if (cfg.n_theta > ladder.back()) ladder.push_back(cfg.n_theta);
    constexpr double kFloor = 1e-10;
    const RefinementStudy st = minkowski_refinement_study(
        field, cfg.family, eps, ladder, cfg.n_phi, kFloor, cfg.tolerances.identity, opts);
    const double worst = *std::max_element(st.residuals.begin(), st.residuals.end());
    std::ostringstream d;
    d << "n_theta " << ladder.front() << ".." << ladder.back() << ": ";
    for (double r : st.residuals) d << r << ' ';
    bool ok = st.spectral;
    if (st.converged_at == 0 || st.converged_at == 1) {
      // Nearly round surface: nothing left to resolve beyond the coarsest grids.
      ok = worst <= cfg.tolerances.identity;
      d << "(at the floor from the coarsest grids)";
    }
    add("minkowski_identity_refinement", ok, st.residuals.back(), cfg.tolerances.identity, d.str());
  });

  // Per-epsilon surface data for the growth checks.
  std::vector<double> eps_all = cfg.epsilons;
  std::vector<double> area_dev, metric_dev, k_dev, lap_terms, f_scale;
  guarded("surface_growth", [&] {
    for (double eps : eps_all) {
      const SurfaceSample s = coordinate_sphere(cfg.family, eps, grid);
      const std::vector<double> ones(grid.size(), 1.0);
      area_dev.push_back(std::abs(eps * eps * integrate_scalar(s, ones, grid) - 4.0 * std::numbers::pi));
      double md = 0.0;
      for (double e : s.E) md = std::max(md, std::abs(eps * eps * e - 1.0));
      metric_dev.push_back(md);
      k_dev.push_back(max_abs_diff(s.K, std::sinh(eps) * std::sinh(eps)));
      const EmbeddedSurface emb = embed_coordinate_sphere(cfg.family, eps, grid, opts);
      const std::vector<double> F = norm_field_values(field, emb);
      lap_terms.push_back(laplacian_term(s, F, grid));
      f_scale.push_back(*std::max_element(F.begin(), F.end()));
    }
  });
  if (area_dev.size() == eps_all.size() && eps_all.size() >= 2) guarded("growth_orders", [&] {
    std::vector<double> e_half, a_half, m_half;
    for (int i : smallest_half(eps_all)) {
      e_half.push_back(eps_all[i]);
      a_half.push_back(area_dev[i]);
      m_half.push_back(metric_dev[i]);
    }
    const double pa = decay_order(e_half, a_half);
    add("area_growth", pa >= 1.5 && pa <= 2.5, pa, 2.0, "order of |eps^2 area - 4 pi|");
    const double pm = decay_order(e_half, m_half);
    add("metric_growth", pm >= 1.5, pm, 2.0, "order of max |eps^2 E - 1|");

    // Relative rounding floor of the Brioschi curvature.
    std::vector<double> k_floor;
    for (double e : eps_all) k_floor.push_back(1e-10 * std::sinh(e) * std::sinh(e));
    const auto pk = decay_order_above_floor(eps_all, k_dev, k_floor);
    const double kmax = *std::max_element(k_dev.begin(), k_dev.end());
    if (pk) {
      add("gauss_curvature_expansion", *pk >= 4.5, *pk, 4.5, "order of max |K - sinh^2 eps|");
    } else {
      add("gauss_curvature_expansion", true, kmax, 0.0, "K = sinh^2 eps to rounding");
    }

    // The Laplacian term vanishes in the limit; below the rounding floor
    // every sample counts as zero.
    const double floor = 1e-10 * *std::max_element(f_scale.begin(), f_scale.end());
    std::vector<double> mags(lap_terms.size());
    for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(lap_terms[k]);
    const bool all_small = std::all_of(mags.begin(), mags.end(), [&](double m) { return m <= floor; });
    bool decreasing = true;
    for (std::size_t k = 1; k < mags.size(); ++k) decreasing = decreasing && mags[k] <= mags[k - 1] + floor;
    std::ostringstream d;
    bool ok = all_small;
    if (!all_small) {
      const bool ratio_ok = mags.back() <= 1e-3 * mags.front();
      const double p = decay_order(eps_all, mags);
      ok = decreasing && (ratio_ok || p >= 1.0);
      d << "decay order " << p << ", final/initial " << mags.back() / mags.front();
    } else {
      d << "below rounding floor " << floor;
    }
    add("laplacian_term_limit", ok, mags.back(), floor, d.str());
  });

  guarded("norm_growth", [&] {
    const GrowthFit g = exhaustion_norm_growth(field, cfg.family, cfg.epsilons, grid, opts);
    add("norm_growth", std::abs(g.order - 1.0) <= 0.05, g.order, 0.05, "|p - 1|");
  });
  return rep;
}

}  // namespace qlmass
