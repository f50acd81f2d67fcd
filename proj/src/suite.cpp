// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "loopext/errors.hpp"
#include "loopext/lie.hpp"
#include "loopext/lifting.hpp"
#include "loopext/mickelsson.hpp"
#include "loopext/parallel.hpp"
#include "loopext/random.hpp"
#include "loopext/wz.hpp"

namespace loopext {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactLevel = 1e-11;

const std::vector<std::string> kSuites{"lie", "mesh", "wz", "mickelsson", "lifting"};

std::uint64_t sub(std::uint64_t seed, int index, int tag) {
  return Rng(seed, static_cast<std::uint64_t>(index) * 64 + static_cast<std::uint64_t>(tag)).next();
}

ModelOptions model(const MeshResolution& r, std::uint64_t center = 0, double jitter = 0.0) {
  ModelOptions o;
  o.extension.shells = r.shells;
  o.extension.contraction.seed = center;
  o.extension.contraction.jitter_angle = jitter;
  return o;
}

// Equivalence checks extend from a jittered center of their own, so that
// chart-wise cancellation between identical cones cannot hide errors.
ModelOptions checker(const CheckContext& c) {
  ModelOptions o = model(c.resolution, 777, 0.6);
  o.circle_tolerance = c.tolerance;
  return o;
}

struct Outcome {
  CheckStatus status = CheckStatus::kPass;
  double error = 0.0;
};

Outcome within(double error, double tolerance) {
  return {error <= tolerance ? CheckStatus::kPass : CheckStatus::kFail, error};
}

Outcome verdict(const Equivalence& e) {
  switch (e.verdict) {
    case Verdict::kEquivalent: return {CheckStatus::kPass, e.circle_distance};
    case Verdict::kIndeterminate: return {CheckStatus::kIndeterminate, e.circle_distance};
    case Verdict::kNotEquivalent: break;
  }
  return {CheckStatus::kFail, e.circle_distance};
}

template <class F>
CheckReport sampled(const std::string& name, int n, double tolerance, const F& f) {
  std::vector<Outcome> out(static_cast<std::size_t>(std::max(0, n)));
  parallel_for(out.size(), [&](std::size_t i) { out[i] = f(static_cast<int>(i)); });
  CheckReport r;
  r.name = name;
  r.tolerance = tolerance;
  for (const auto& o : out) r.add(o.status, o.error);
  return r;
}

// A mutation check passes when the checker rejects at least one sample.
CheckReport detection(const std::string& name, const CheckReport& mutated) {
  CheckReport r;
  r.name = name;
  r.tolerance = mutated.tolerance;
  if (mutated.samples == 0) return r;
  r.add(mutated.failed > 0 ? CheckStatus::kPass : CheckStatus::kFail, mutated.max_error);
  return r;
}

double max_component_difference(const GroupElement& a, const GroupElement& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a.components()[k] - b.components()[k]));
  return d;
}

std::vector<SampledPath> paths(std::uint64_t seed, int count, const MeshResolution& r) {
  return random_path_family(count, seed, 3, 1.5, 1.0, r.path_segments(), r.path_collar());
}

SphereMap random_sphere(std::uint64_t seed, double amplitude, const MeshResolution& r) {
  auto a = std::make_shared<const DiskMap>(random_disk(seed, 3, amplitude, r.radial, r.angular));
  auto b = std::make_shared<const DiskMap>(perturb_disk(*a, seed + 1000, 3, amplitude));
  return glue_sphere(a, b);
}

// ---------------------------------------------------------------------------
// Check groups. A group evaluates shared data once and yields one report per
// registered name.

using Group = std::vector<CheckReport> (*)(const CheckContext&);

std::vector<CheckReport> lie_algebra(const CheckContext& c) {
  const CheckReport assoc = sampled("lie.group-associativity", 50 * c.samples, 1e-14, [&](int i) {
    Rng rng(sub(c.seed, i, 0));
    const GroupElement a = rng.group_element(), b = rng.group_element(), d = rng.group_element();
    return within(max_component_difference((a * b) * d, a * (b * d)), 1e-14);
  });
  const CheckReport explog = sampled("lie.exp-log", 50 * c.samples, 1e-12, [&](int i) {
    Rng rng(sub(c.seed, i, 1));
    const GroupElement g = rng.group_element();
    return within(max_component_difference(exp_map(log_map(g)), g), 1e-12);
  });
  return {assoc, explog};
}

std::vector<CheckReport> lie_rho_cocycle(const CheckContext& c) {
  const PairingConstant& p = default_pairing();
  return {sampled("lie.rho-cocycle", 250 * c.samples, 1e-10, [&](int i) {
    Rng rng(sub(c.seed, i, 2));
    const GroupElement g1 = rng.group_element(), g2 = rng.group_element(), g3 = rng.group_element();
    const std::array<AlgElement, 3> t{rng.normal_vector(), rng.normal_vector(), rng.normal_vector()};
    const std::array<AlgElement, 3> u{rng.normal_vector(), rng.normal_vector(), rng.normal_vector()};
    return within(std::abs(rho_cocycle_defect(g1, g2, g3, t, u, p)), 1e-10);
  })};
}

std::vector<CheckReport> lie_h_rho(const CheckContext& c) {
  const PairingConstant& p = default_pairing();
  const double h = 3.2 / c.resolution.angular;
  return {sampled("lie.h-rho-coboundary", 5 * c.samples, 1e-2, [&](int i) {
    Rng rng(sub(c.seed, i, 3));
    const GroupElement g1 = rng.group_element(), g2 = rng.group_element();
    std::array<AlgElement, 3> a, b;
    for (int k = 0; k < 3; ++k) {
      a[static_cast<std::size_t>(k)] = rng.normal_vector();
      b[static_cast<std::size_t>(k)] = rng.normal_vector();
    }
    return within(std::abs(h_rho_coboundary_residual(g1, g2, a, b, h, p)), 1e-2);
  })};
}

std::vector<CheckReport> mesh_exact(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  const CheckReport fill = sampled("mesh.fill-boundary", c.samples, 1e-12, [&](int i) {
    const SampledLoop l = random_loop(sub(c.seed, i, 4), 3, 2.0, r.angular);
    FillOptions o;
    o.radial = r.radial;
    return within(loop_distance(fill_disk(l, o).boundary(), l), 1e-12);
  });
  const CheckReport inv = sampled("mesh.inverse-involution", c.samples, 0.0, [&](int i) {
    const DiskMap d = random_disk(sub(c.seed, i, 5), 3, 2.0, r.radial, r.angular);
    const DiskMap back = pointwise_inverse(pointwise_inverse(d));
    const bool same = back.samples() == d.samples() && back.jets().left_r == d.jets().left_r &&
                      back.jets().left_theta == d.jets().left_theta && back.jets().right_r == d.jets().right_r &&
                      back.jets().right_theta == d.jets().right_theta;
    return Outcome{same ? CheckStatus::kPass : CheckStatus::kFail, same ? 0.0 : kInf};
  });
  return {fill, inv};
}

std::vector<CheckReport> mesh_leibniz(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  return {sampled("mesh.jet-leibniz", c.samples, 5e-2, [&](int i) {
    const DiskMap a = random_disk(sub(c.seed, i, 6), 3, 1.5, r.radial, r.angular);
    const DiskMap b = random_disk(sub(c.seed, i, 7), 3, 1.5, r.radial, r.angular);
    const DiskMap ab = pointwise_product(a, b);
    const DiskMap fd = DiskMap::from_samples(r.radial, r.angular, ab.collar_fraction(), ab.samples());
    double d = 0.0;
    for (std::size_t k = 0; k < ab.samples().size(); ++k) {
      d = std::max(d, (ab.jets().left_r[k] - fd.jets().left_r[k]).norm());
      d = std::max(d, (ab.jets().left_theta[k] - fd.jets().left_theta[k]).norm());
    }
    return within(d, 5e-2);
  })};
}

std::vector<CheckReport> wz_calibration(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  CheckReport rep;
  rep.name = "wz.calibration";
  rep.tolerance = c.tolerance;
  const double s = integrate_h_ball(calibration_ball(r.shells, r.radial, r.angular), default_pairing());
  const Outcome o = within(std::abs(s - 1.0), c.tolerance);
  rep.add(o.status, o.error);
  return {rep};
}

std::vector<CheckReport> wz_integrality(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  return {sampled("wz.integrality", c.samples, c.tolerance, [&](int i) {
    const std::uint64_t s = sub(c.seed, i, 8);
    const SphereMap sphere = random_sphere(s, 2.5, r);
    WzOptions a, b;
    a.extension.shells = b.extension.shells = r.shells;
    a.extension.contraction = {s, 0.3};
    b.extension.contraction = {s + 17, 2.8};
    const double d = wz_integral(sphere, b) - wz_integral(sphere, a);
    return within(std::abs(d - std::round(d)), c.tolerance);
  })};
}

std::vector<CheckReport> product_checks(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  const ModelOptions o = model(r), check = checker(c);
  const CheckReport well = sampled("mickelsson.product-well-defined", c.samples, c.tolerance, [&](int i) {
    const ExtElement a = random_element(sub(c.seed, i, 9), r), b = random_element(sub(c.seed, i, 10), r);
    const ExtElement a2 = rebuild_filling(a, sub(c.seed, i, 11), 1.0, o);
    const ExtElement b2 = rebuild_filling(b, sub(c.seed, i, 12), 1.0, o);
    return verdict(equivalent(product(a, b, o), product(a2, b2, o), check));
  });
  const CheckReport assoc = sampled("mickelsson.product-associative", c.samples, c.tolerance, [&](int i) {
    const ExtElement a = random_element(sub(c.seed, i, 13), r), b = random_element(sub(c.seed, i, 14), r);
    const ExtElement d = random_element(sub(c.seed, i, 15), r);
    return verdict(equivalent(product(product(a, b, o), d, o), product(a, product(b, d, o), o), check));
  });
  const CheckReport flipped = sampled("mickelsson.product-sign-mutation", c.samples, c.tolerance, [&](int i) {
    const auto bad = [&](const ExtElement& a, const ExtElement& b) {
      const double rho = integrate_rho_disk(*a.phi, *b.phi, o.pairing_or_default());
      return scalar_mul(product(a, b, o), CircleValue::from_turns(2 * rho));
    };
    const ExtElement a = random_element(sub(c.seed, i, 16), r), b = random_element(sub(c.seed, i, 17), r);
    const ExtElement a2 = rebuild_filling(a, sub(c.seed, i, 18), 1.5, o);
    const ExtElement b2 = rebuild_filling(b, sub(c.seed, i, 19), 1.5, o);
    return verdict(equivalent(bad(a, b), bad(a2, b2), check));
  });
  return {well, assoc, detection("mickelsson.product-sign-mutation", flipped)};
}

std::vector<CheckReport> fusion_checks(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  const ModelOptions check = checker(c);
  const CheckReport indep = sampled("mickelsson.fusion-independence", c.samples, c.tolerance, [&](int i) {
    const std::uint64_t s = sub(c.seed, i, 20);
    const auto g = paths(s, 3, r);
    const FusionContext ctx(g[0], g[1], g[2]);
    const ExtElement a12 = random_element_over(g[0], g[1], s + 1, r), a23 = random_element_over(g[1], g[2], s + 2, r);
    ModelOptions o1 = model(r, s + 5, 0.6), o2 = model(r, s + 6, 0.6);
    o1.fill.contraction = {s, 0.5};
    o2.fill.contraction = {s + 99, 0.5};
    return verdict(equivalent(fusion(a12, a23, ctx, o1), fusion(a12, a23, ctx, o2), check));
  });
  const CheckReport assoc = sampled("mickelsson.fusion-associative", c.samples, c.tolerance, [&](int i) {
    const std::uint64_t s = sub(c.seed, i, 21);
    const auto g = paths(s, 4, r);
    const ExtElement a12 = random_element_over(g[0], g[1], s + 1, r);
    const ExtElement a23 = random_element_over(g[1], g[2], s + 2, r);
    const ExtElement a34 = random_element_over(g[2], g[3], s + 3, r);
    const ExtElement left =
        fusion(fusion(a12, a23, {g[0], g[1], g[2]}, model(r, s + 1, 0.6)), a34, {g[0], g[2], g[3]}, model(r, s + 2, 0.6));
    const ExtElement right =
        fusion(a12, fusion(a23, a34, {g[1], g[2], g[3]}, model(r, s + 3, 0.6)), {g[0], g[1], g[3]}, model(r, s + 4, 0.6));
    return verdict(equivalent(left, right, check));
  });
  const CheckReport mult = sampled("mickelsson.fusion-multiplicative", c.samples, c.tolerance, [&](int i) {
    const std::uint64_t s = sub(c.seed, i, 22);
    const ModelOptions o = model(r);
    const auto g = paths(s, 3, r), h = paths(s + 50, 3, r);
    const FusionContext cg(g[0], g[1], g[2]), ch(h[0], h[1], h[2]);
    const ExtElement a12 = random_element_over(g[0], g[1], s + 1, r), a23 = random_element_over(g[1], g[2], s + 2, r);
    const ExtElement b12 = random_element_over(h[0], h[1], s + 3, r), b23 = random_element_over(h[1], h[2], s + 4, r);
    const ExtElement lhs = product(fusion(a12, a23, cg, o), fusion(b12, b23, ch, o), o);
    const ExtElement rhs = fusion(product(a12, b12, o), product(a23, b23, o), cg * ch, o);
    return verdict(equivalent(lhs, rhs, check));
  });
  return {indep, assoc, mult};
}

LiftingCheckOptions lifting_options(const CheckContext& c) {
  LiftingCheckOptions o = default_check_options(c.resolution);
  o.checker.circle_tolerance = c.tolerance;
  return o;
}

std::vector<CheckReport> lifting_gerbe(const CheckContext& c) {
  const MeshResolution& r = c.resolution;
  const LiftingCheckOptions lo = lifting_options(c);
  const CheckReport cocycle = sampled("lifting.difference-cocycle", c.samples, 1e-14, [&](int i) {
    const BaseLoop base = random_base_loop({}, sub(c.seed, i, 23), r.angular);
    const BundleLoop a{base, random_loop(sub(c.seed, i, 24), 3, 2.0, r.angular)};
    const BundleLoop b{base, random_loop(sub(c.seed, i, 25), 3, 2.0, r.angular)};
    const BundleLoop d{base, random_loop(sub(c.seed, i, 26), 3, 2.0, r.angular)};
    return within(loop_distance(difference_loop(a, b) * difference_loop(b, d), difference_loop(a, d)), 1e-14);
  });
  CheckReport assoc = check_gerbe_associativity(c.samples, c.seed, model(r), lo);
  assoc.name = "lifting.gerbe-associativity";
  CheckReport fus = check_mu_fusion_preserving(c.samples, c.seed, model(r), lo);
  fus.name = "lifting.mu-fusion-preserving";
  return {cocycle, assoc, fus};
}

std::vector<CheckReport> lifting_constructions(const CheckContext& c) {
  const LiftingCheckOptions lo = lifting_options(c);
  const SampledBundle bundle;
  const Trivialization t = canonical_trivialization(bundle, model(c.resolution));
  CheckReport action = check_action_condition(t, c.samples, c.seed, lo);
  action.name = "lifting.action-condition";
  const CheckReport twisted = check_action_condition(mutate(t, LiftMutation::kKappaTwist), c.samples, c.seed, lo);
  const RoundTripReport rt =
      check_round_trips(canonical_fusion_lift(bundle, model(c.resolution)), t, 25 * c.samples, c.seed, lo);
  CheckReport lift = rt.lift, triv = rt.trivialization;
  lift.name = "lifting.round-trip-lift";
  triv.name = "lifting.round-trip-trivialization";
  return {action, detection("lifting.action-mutation", twisted), lift, triv};
}

std::vector<CheckReport> lifting_fusion(const CheckContext& c) {
  const LiftingCheckOptions lo = lifting_options(c);
  const Trivialization t = canonical_trivialization({}, model(c.resolution));
  const FusionEquivalenceReport canon = check_fusion_equivalence(t, c.samples, c.seed, lo);
  CheckReport kappa = canon.kappa_side, action = canon.action_side, inv = canon.inverse_law;
  kappa.name = "lifting.kappa-fusion-preserving";
  action.name = "lifting.action-fusion-preserving";
  inv.name = "lifting.fusion-inverse-law";

  // Concordance: one sample per (configuration, sample), error = discordant count.
  CheckReport concord;
  concord.name = "lifting.fusion-concordance";
  concord.tolerance = 0.0;
  CheckReport mutations;
  mutations.name = "lifting.fusion-mutations";
  mutations.tolerance = c.tolerance;
  auto add_concordance = [&](const FusionEquivalenceReport& f) {
    for (int k = 0; k < f.concordant; ++k) concord.add(CheckStatus::kPass, 0.0);
    for (int k = 0; k < f.discordant; ++k) concord.add(CheckStatus::kFail, 1.0);
  };
  add_concordance(canon);
  for (LiftMutation m : {LiftMutation::kFusionTwist, LiftMutation::kFusionWzSign}) {
    const FusionEquivalenceReport f = check_fusion_equivalence(mutate(t, m), c.samples, c.seed, lo);
    add_concordance(f);
    if (c.samples > 0) {
      const bool caught = f.kappa_side.failed > 0 && f.action_side.failed > 0;
      mutations.add(caught ? CheckStatus::kPass : CheckStatus::kFail,
                    std::min(f.kappa_side.max_error, f.action_side.max_error));
    }
  }
  return {kappa, action, inv, concord, mutations};
}

struct Registered {
  std::string suite;
  Group group;
  std::vector<CheckInfo> checks;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = [] {
    std::vector<Registered> g;
    g.push_back({"lie", lie_algebra,
                 {{"lie.group-associativity", "lie", "plumbing", false, false},
                  {"lie.exp-log", "lie", "plumbing", false, false}}});
    g.push_back({"lie", lie_rho_cocycle, {{"lie.rho-cocycle", "lie", "form-identity:rho-cocycle", false, false}}});
    g.push_back({"lie", lie_h_rho,
                 {{"lie.h-rho-coboundary", "lie", "form-identity:h-rho-coboundary", true, false}}});
    g.push_back({"mesh", mesh_exact,
                 {{"mesh.fill-boundary", "mesh", "plumbing", false, false},
                  {"mesh.inverse-involution", "mesh", "plumbing", false, false}}});
    g.push_back({"mesh", mesh_leibniz, {{"mesh.jet-leibniz", "mesh", "plumbing", true, false}}});
    g.push_back({"wz", wz_calibration, {{"wz.calibration", "wz", "wz-term:h-normalization", true, true}}});
    g.push_back({"wz", wz_integrality, {{"wz.integrality", "wz", "wz-term:extension-independence", true, true}}});
    g.push_back({"mickelsson", product_checks,
                 {{"mickelsson.product-well-defined", "mickelsson", "extension-model:product-well-defined", true, true},
                  {"mickelsson.product-associative", "mickelsson", "extension-model:product-associative", true, true},
                  {"mickelsson.product-sign-mutation", "mickelsson", "extension-model:product-well-defined", false,
                   true}}});
    g.push_back({"mickelsson", fusion_checks,
                 {{"mickelsson.fusion-independence", "mickelsson", "fusion-product:filling-independence", true, true},
                  {"mickelsson.fusion-associative", "mickelsson", "fusion-product:associativity", true, true},
                  {"mickelsson.fusion-multiplicative", "mickelsson", "fusion-product:multiplicativity", true, true}}});
    g.push_back({"lifting", lifting_gerbe,
                 {{"lifting.difference-cocycle", "lifting", "lifting-gerbe:difference-cocycle", false, false},
                  {"lifting.gerbe-associativity", "lifting", "lifting-gerbe:product-associativity", true, true},
                  {"lifting.mu-fusion-preserving", "lifting", "lifting-gerbe:internal-fusion", true, true}}});
    g.push_back({"lifting", lifting_constructions,
                 {{"lifting.action-condition", "lifting", "lifting-gerbe:trivialization-compatibility", false, false},
                  {"lifting.action-mutation", "lifting", "lifting-gerbe:trivialization-compatibility", false, false},
                  {"lifting.round-trip-lift", "lifting", "lifting-gerbe:lift-trivialization-equivalence", false, false},
                  {"lifting.round-trip-trivialization", "lifting", "lifting-gerbe:lift-trivialization-equivalence",
                   false, false}}});
    g.push_back({"lifting", lifting_fusion,
                 {{"lifting.kappa-fusion-preserving", "lifting", "fusion-lift:equivalence", true, true},
                  {"lifting.action-fusion-preserving", "lifting", "fusion-lift:equivalence", true, true},
                  {"lifting.fusion-inverse-law", "lifting", "fusion-lift:inverse-law", true, true},
                  {"lifting.fusion-concordance", "lifting", "fusion-lift:equivalence", false, false},
                  {"lifting.fusion-mutations", "lifting", "fusion-lift:equivalence", false, true}}});
    return g;
  }();
  return r;
}

bool selected(const SuiteConfig& config, const std::string& suite) {
  return std::find(config.suites.begin(), config.suites.end(), suite) != config.suites.end();
}

// Runs a group over every seed and merges the reports by position.
std::vector<CheckReport> run_group(const Registered& g, const SuiteConfig& config, const MeshResolution& res) {
  std::vector<CheckReport> merged;
  for (std::uint64_t seed : config.seeds) {
    const CheckContext ctx{res, config.tolerances.front(), seed, config.samples};
    std::vector<CheckReport> reps = g.group(ctx);
    if (merged.empty()) {
      merged = std::move(reps);
    } else {
      for (std::size_t k = 0; k < merged.size(); ++k) merged[k].absorb(reps[k]);
    }
  }
  return merged;
}

std::optional<double> passes_at(const CheckInfo& info, const CheckReport& rep, const SuiteConfig& config) {
  if (!info.circle || rep.samples == 0 || rep.indeterminate > 0) return std::nullopt;
  std::vector<double> ladder = config.tolerances;
  std::sort(ladder.begin(), ladder.end());
  for (double t : ladder) {
    if (rep.max_error <= t) return t;
  }
  return std::nullopt;
}

std::vector<CheckRecord> run_registered(const SuiteConfig& config, const MeshResolution& res, bool refinable_only) {
  std::vector<CheckRecord> out;
  for (const auto& g : registry()) {
    if (!selected(config, g.suite)) continue;
    if (refinable_only && std::none_of(g.checks.begin(), g.checks.end(), [](const CheckInfo& c) { return c.refinable; })) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CheckReport> reps = run_group(g, config, res);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (std::size_t k = 0; k < g.checks.size(); ++k) {
      if (refinable_only && !g.checks[k].refinable) continue;
      out.push_back({g.checks[k], reps[k], res, passes_at(g.checks[k], reps[k], config), wall});
    }
  }
  return out;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json resolution_json(const MeshResolution& r) {
  return {{"radial", r.radial}, {"angular", r.angular}, {"shells", r.shells}};
}

json record_json(const CheckRecord& r, bool with_timing) {
  json j = {{"name", r.info.name},
            {"suite", r.info.suite},
            {"anchor", r.info.anchor},
            {"status", to_string(r.report.status())},
            {"max_error", number(r.report.max_error)},
            {"tolerance", number(r.report.tolerance)},
            {"samples", r.report.samples},
            {"passed", r.report.passed},
            {"failed", r.report.failed},
            {"indeterminate", r.report.indeterminate},
            {"resolution", resolution_json(r.resolution)},
            {"passes_at", r.passes_at ? number(*r.passes_at) : json(nullptr)}};
  if (with_timing) j["wall_time_s"] = r.wall_time;
  return j;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << v;
  return s.str();
}

std::string res_string(const MeshResolution& r) {
  return std::to_string(r.radial) + "x" + std::to_string(r.angular) + "x" + std::to_string(r.shells);
}

}  // namespace

void validate(const SuiteConfig& config) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kConfigError, m); };
  if (config.suites.empty()) fail("no suites selected");
  for (const auto& s : config.suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) fail("unknown suite '" + s + "'");
  }
  if (config.tolerances.empty()) fail("empty tolerance ladder");
  for (double t : config.tolerances) {
    if (!(t > 0.0) || !std::isfinite(t)) fail("tolerances must be positive and finite");
  }
  if (config.seeds.empty()) fail("no seeds");
  if (config.samples < 0) fail("samples must be non-negative");
  if (config.levels < 1) fail("levels must be at least 1");
  const MeshResolution& r = config.resolution;
  if (r.radial < 3 || r.angular < 16 || r.angular % 16 != 0 || r.shells < 3) {
    fail("resolution needs radial >= 3, angular a positive multiple of 16, shells >= 3");
  }
}

const std::vector<CheckInfo>& list_checks() {
  static const std::vector<CheckInfo> all = [] {
    std::vector<CheckInfo> v;
    for (const auto& g : registry()) v.insert(v.end(), g.checks.begin(), g.checks.end());
    return v;
  }();
  return all;
}

CheckReport run_check(const std::string& name, const CheckContext& context) {
  for (const auto& g : registry()) {
    for (std::size_t k = 0; k < g.checks.size(); ++k) {
      if (g.checks[k].name == name) return g.group(context)[k];
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown check '" + name + "'");
}

int RunReport::count(CheckStatus s) const {
  int n = 0;
  for (const auto& r : records) n += r.report.status() == s;
  for (const auto& c : convergence) n += !c.levels.empty() && c.levels.back().report.status() == s;
  return n;
}

RunReport run_suite(const SuiteConfig& config) {
  validate(config);
  RunReport report;
  report.kind = "run";
  report.config = config;
  report.records = run_registered(config, config.resolution, false);
  return report;
}

MeshResolution level_resolution(const MeshResolution& finest, int k, int levels) {
  const int m = levels - 1 - k;
  MeshResolution r;
  r.radial = std::max(3, finest.radial >> m);
  r.angular = std::max(16, finest.angular >> m);
  r.shells = std::max(3, finest.shells >> m);
  return r;
}

RunReport run_convergence(const SuiteConfig& config) {
  validate(config);
  if (config.levels < 3) throw Error(ErrorCode::kConfigError, "a convergence study needs at least 3 levels");
  RunReport report;
  report.kind = "convergence";
  report.config = config;
  std::vector<std::vector<CheckRecord>> per_level;
  for (int k = 0; k < config.levels; ++k) {
    per_level.push_back(run_registered(config, level_resolution(config.resolution, k, config.levels), true));
  }
  for (std::size_t c = 0; c < per_level.front().size(); ++c) {
    ConvergenceRecord rec;
    rec.info = per_level.front()[c].info;
    for (const auto& level : per_level) rec.levels.push_back(level[c]);
    rec.exact = std::all_of(rec.levels.begin(), rec.levels.end(),
                            [](const CheckRecord& r) { return r.report.max_error <= kExactLevel; });
    if (!rec.exact) {
      // Least squares of log(error) against log(angular).
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      bool finite = true;
      for (const auto& l : rec.levels) {
        const double x = std::log(static_cast<double>(l.resolution.angular));
        const double e = l.report.max_error;
        if (!(e > 0.0) || !std::isfinite(e)) finite = false;
        const double y = std::log(std::max(e, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double n = static_cast<double>(rec.levels.size());
      if (finite) rec.exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
      for (std::size_t k = 1; k < rec.levels.size(); ++k) {
        if (!(rec.levels[k].report.max_error <= rec.levels[k - 1].report.max_error)) rec.monotone = false;
      }
    }
    report.convergence.push_back(std::move(rec));
  }
  return report;
}

RunReport replay(const Record& record, const SuiteConfig& config) {
  validate(config);
  RunReport report;
  report.kind = "replay";
  report.config = config;
  const double tol = config.tolerances.front();
  const ModelOptions check = [&] {
    CheckContext c;
    c.resolution = config.resolution;
    c.tolerance = tol;
    return checker(c);
  }();
  auto add = [&](const std::string& name, Outcome o, double tolerance, MeshResolution res, bool circle = false) {
    CheckRecord r;
    r.info = {name, "replay", "plumbing", false, circle};
    r.report.name = name;
    r.report.tolerance = tolerance;
    r.report.add(o.status, o.error);
    r.resolution = res;
    r.passes_at = passes_at(r.info, r.report, config);
    report.records.push_back(std::move(r));
  };
  const std::string text = std::visit([](const auto& v) { return serialize(v); }, record);
  const std::string again = std::visit([](const auto& v) { return serialize(v); }, deserialize(text));
  add("replay.round-trip", {text == again ? CheckStatus::kPass : CheckStatus::kFail, text == again ? 0.0 : kInf},
      0.0, config.resolution);

  if (const auto* p = std::get_if<SampledPath>(&record)) {
    const SampledLoop l = loop_join(*p, *p);
    add("replay.path-self-join", within(loop_distance(l, l.reversed()), 0.0), 0.0, config.resolution);
  } else if (const auto* l = std::get_if<SampledLoop>(&record)) {
    FillOptions o;
    o.radial = config.resolution.radial;
    add("replay.loop-fill-boundary", within(loop_distance(fill_disk(*l, o).boundary(), *l), 1e-12), 1e-12,
        config.resolution);
  } else if (const auto* d = std::get_if<DiskMap>(&record)) {
    const MeshResolution res{d->radial(), d->angular(), config.resolution.shells};
    auto phi = std::make_shared<const DiskMap>(*d);
    auto other = std::make_shared<const DiskMap>(perturb_disk(*d, 1, 3, 1.0));
    WzOptions a, b;
    a.extension.shells = b.extension.shells = res.shells;
    b.extension.contraction = {5, 2.0};
    const SphereMap s = glue_sphere(phi, other, 1e-9);
    const double x = wz_integral(s, b) - wz_integral(s, a);
    add("replay.disk-wz-integrality", within(std::abs(x - std::round(x)), tol), tol, res, true);
  } else if (const auto* e = std::get_if<ExtElement>(&record)) {
    const MeshResolution res{e->phi->radial(), e->phi->angular(), config.resolution.shells};
    const ModelOptions o = model(res);
    add("replay.element-inverse",
        verdict(equivalent(product(*e, inverse(*e, o), o), identity_element(res), check)), tol, res, true);
    add("replay.element-refill", verdict(equivalent(rebuild_filling(*e, 3, 1.0, o), *e, check)), tol, res, true);
  }
  return report;
}

std::string to_json(const RunReport& report, bool with_timing) {
  const SuiteConfig& c = report.config;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = report.kind;
  j["config"] = {{"resolution", resolution_json(c.resolution)},
                 {"tolerances", c.tolerances},
                 {"seeds", c.seeds},
                 {"suites", c.suites},
                 {"levels", c.levels},
                 {"samples", c.samples}};
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_json(r, with_timing));
  j["records"] = records;
  json conv = json::array();
  for (const auto& cr : report.convergence) {
    json levels = json::array();
    for (const auto& l : cr.levels) levels.push_back(record_json(l, with_timing));
    conv.push_back({{"name", cr.info.name},
                    {"suite", cr.info.suite},
                    {"anchor", cr.info.anchor},
                    {"levels", levels},
                    {"exact", cr.exact},
                    {"monotone", cr.monotone},
                    {"fitted_exponent", cr.exponent ? number(*cr.exponent) : json(nullptr)}});
  }
  j["convergence"] = conv;
  j["summary"] = {{"pass", report.count(CheckStatus::kPass)},
                  {"fail", report.count(CheckStatus::kFail)},
                  {"indeterminate", report.count(CheckStatus::kIndeterminate)},
                  {"vacuous", report.count(CheckStatus::kVacuous)}};
  j["coverage_note"] =
      "statements quantified over all paths, loops and elements are verified on the sampled data only";
  if (with_timing) {
    double total = 0.0;
    for (const auto& r : report.records) total += r.wall_time;
    j["threads"] = thread_count();
    j["wall_time_s"] = total;
  }
  return j.dump(2);
}

std::string to_markdown(const RunReport& report) {
  std::ostringstream out;
  out << "# loopext " << report.kind << " report\n\n";
  out << "Resolution " << res_string(report.config.resolution) << ", " << report.config.seeds.size()
      << " seed(s), " << report.config.samples << " sample(s) per seed.\n\n";
  if (!report.records.empty()) {
    out << "| check | anchor | status | max error | tolerance | samples | resolution | time (s) |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.records) {
      out << "| " << r.info.name << " | " << r.info.anchor << " | " << to_string(r.report.status()) << " | "
          << fmt(r.report.max_error) << " | " << fmt(r.report.tolerance) << " | " << r.report.samples << " | "
          << res_string(r.resolution) << " | " << fmt(r.wall_time) << " |\n";
    }
  }
  if (!report.convergence.empty()) {
    out << "| check | errors (coarse to fine) | fitted order | monotone |\n";
    out << "|---|---|---|---|\n";
    for (const auto& c : report.convergence) {
      out << "| " << c.info.name << " | ";
      for (std::size_t k = 0; k < c.levels.size(); ++k) {
        out << (k ? ", " : "") << fmt(c.levels[k].report.max_error);
      }
      out << " | " << (c.exact ? std::string("exact") : c.exponent ? fmt(*c.exponent) : std::string("-")) << " | "
          << (c.monotone ? "yes" : "no") << " |\n";
    }
  }
  out << "\n" << report.count(CheckStatus::kPass) << " pass, " << report.count(CheckStatus::kFail) << " fail, "
      << report.count(CheckStatus::kIndeterminate) << " indeterminate, " << report.count(CheckStatus::kVacuous)
      << " vacuous. Universally quantified statements are verified on sampled data only.\n";
  return out.str();
}

int exit_code(const RunReport& report, bool allow_indeterminate) {
  if (report.count(CheckStatus::kFail) > 0) return 1;
  if (!allow_indeterminate && report.count(CheckStatus::kIndeterminate) > 0) return 1;
  return 0;
}

}  // namespace loopext
