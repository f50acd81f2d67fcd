// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "loopext/errors.hpp"
#include "loopext/parallel.hpp"
#include "loopext/random.hpp"

namespace loopext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double turns_between(const CircleValue& a, const CircleValue& b) {
  return circle_distance(a, b) / (2.0 * std::numbers::pi);
}

std::uint64_t sample_seed(std::uint64_t seed, int index, std::uint64_t tag) {
  return Rng(seed, static_cast<std::uint64_t>(index) * 64 + tag).next();
}

void check_over(const LiftPoint& t, const BundleLoop& loop, double tolerance, const char* what) {
  if (t.base != loop.base) throw Error(ErrorCode::kBaseMismatch, std::string(what) + ": base loops differ");
  const double d = loop_distance(project(t.a), loop.fiber);
  if (!(d <= tolerance)) {
    std::ostringstream msg;
    msg << what << ": point is not over the expected loop (distance " << d << ")";
    throw Error(ErrorCode::kBoundaryMismatch, msg.str());
  }
}

void check_context(const GerbeElement& q, const GerbeFusionContext& ctx, int i, int j, double tolerance) {
  const BaseLoop base = ctx.base.join(i, j);
  const bool ok = q.tau.base == base && q.tau_prime.base == base &&
                  loop_distance(q.tau.fiber, loop_join(ctx.first[i], ctx.first[j])) <= tolerance &&
                  loop_distance(q.tau_prime.fiber, loop_join(ctx.second[i], ctx.second[j])) <= tolerance;
  if (!ok) {
    std::ostringstream msg;
    msg << "internal_fusion: q" << i + 1 << j + 1 << " does not lie over the joins of the context";
    throw Error(ErrorCode::kFusionContextMismatch, msg.str());
  }
}

SampledPath inverse_path(const SampledPath& p) {
  std::vector<GroupElement> s;
  s.reserve(p.samples().size());
  for (const auto& g : p.samples()) s.push_back(g.inverse());
  return SampledPath(std::move(s), p.collar());
}

PathTriple inverse_triple(const PathTriple& t) {
  return PathTriple(inverse_path(t[0]), inverse_path(t[1]), inverse_path(t[2]));
}

double mean_real_part(const SampledLoop& l) {
  double s = 0.0;
  for (const auto& g : l.samples()) s += g.w();
  return s / std::max(1, l.size());
}

// Per-sample outcome of an equivalence or pointwise comparison.
struct Outcome {
  CheckStatus status = CheckStatus::kPass;
  double error = 0.0;
};

Outcome from_equivalence(const Equivalence& e) {
  switch (e.verdict) {
    case Verdict::kEquivalent: return {CheckStatus::kPass, e.circle_distance};
    case Verdict::kIndeterminate: return {CheckStatus::kIndeterminate, e.circle_distance};
    case Verdict::kNotEquivalent: break;
  }
  return {CheckStatus::kFail, e.circle_distance};
}

Outcome from_distance(double d, double tolerance) {
  return {d <= tolerance ? CheckStatus::kPass : CheckStatus::kFail, d};
}

Outcome compare_points(const LiftPoint& s, const LiftPoint& t, const ModelOptions& checker) {
  if (s.base != t.base) return {CheckStatus::kFail, kInf};
  return from_equivalence(equivalent(s.a, t.a, checker));
}

void merge(CheckReport& r, const Outcome& o) { r.add(o.status, o.error); }

template <class Result, class Eval>
std::vector<Result> shard(int samples, const Eval& eval) {
  std::vector<Result> out(static_cast<std::size_t>(std::max(0, samples)));
  parallel_for(out.size(), [&](std::size_t i) { out[i] = eval(static_cast<int>(i)); });
  return out;
}

// Loops p_0, ..., p_links over a common base with random elements between
// them, built down from a random top element over the last loop.
struct Chain {
  BaseLoop base;
  std::vector<SampledLoop> fibers;
  std::vector<ExtElement> betas;  // betas[k] projects to difference_loop(p_k, p_k+1)
  ExtElement top;
};

Chain random_chain(const SampledBundle& bundle, int links, std::uint64_t seed, const MeshResolution& res) {
  Chain c;
  c.base = random_base_loop(bundle, seed, res.angular);
  c.top = random_element(sample_seed(seed, 0, 1), res, 1.5);
  c.fibers.assign(static_cast<std::size_t>(links) + 1, project(c.top));
  for (int k = 0; k < links; ++k) c.betas.push_back(random_element(sample_seed(seed, k + 1, 2), res, 1.2));
  for (int k = links - 1; k >= 0; --k) {
    const auto u = static_cast<std::size_t>(k);
    c.fibers[u] = c.fibers[u + 1] * pointwise_inverse(project(c.betas[u]));
  }
  return c;
}

GerbeElement link(const Chain& c, int k) {
  return {{c.base, c.fibers[static_cast<std::size_t>(k)]}, {c.base, c.fibers[static_cast<std::size_t>(k) + 1]},
          c.betas[static_cast<std::size_t>(k)]};
}

std::vector<int> ramp_path(int from, int to, int segments, int n, double bump) {
  std::vector<int> p(static_cast<std::size_t>(segments) + 1);
  for (int k = 0; k <= segments; ++k) {
    const double t = static_cast<double>(k) / segments;
    const double s = smoothstep5(t);
    const double v = from + (to - from) * s + bump * std::sin(std::numbers::pi * s);
    p[static_cast<std::size_t>(k)] = ((static_cast<int>(std::lround(v)) % n) + n) % n;
  }
  p.front() = ((from % n) + n) % n;
  p.back() = ((to % n) + n) % n;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Base data

BasePathTriple::BasePathTriple(std::vector<int> p1, std::vector<int> p2, std::vector<int> p3)
    : paths_{std::move(p1), std::move(p2), std::move(p3)} {
  for (const auto& p : paths_) {
    if (p.size() != paths_[0].size() || p.size() < 2) {
      throw Error(ErrorCode::kFusionContextMismatch, "BasePathTriple: paths have different sample counts");
    }
    if (p.front() != paths_[0].front() || p.back() != paths_[0].back()) {
      throw Error(ErrorCode::kEndpointMismatch, "BasePathTriple: paths do not share both endpoints");
    }
  }
}

BaseLoop BasePathTriple::join(int i, int j) const {
  const auto& a = (*this)[i];
  const auto& b = (*this)[j];
  const int n = segments();
  BaseLoop out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k <= n; ++k) out.push_back(a[static_cast<std::size_t>(k)]);
  for (int k = n - 1; k >= 1; --k) out.push_back(b[static_cast<std::size_t>(k)]);
  return out;
}

PathTriple GerbeFusionContext::induced() const {
  auto diff = [](const SampledPath& a, const SampledPath& b) { return inverse_path(a) * b; };
  return PathTriple(diff(first[0], second[0]), diff(first[1], second[1]), diff(first[2], second[2]));
}

// ---------------------------------------------------------------------------
// Gerbe

SampledLoop difference_loop(const BundleLoop& a, const BundleLoop& b) {
  if (a.base != b.base) throw Error(ErrorCode::kBaseMismatch, "difference_loop: base loops differ");
  if (a.fiber.size() != b.fiber.size()) {
    throw Error(ErrorCode::kBaseMismatch, "difference_loop: fiber loops have different sample counts");
  }
  return pointwise_inverse(a.fiber) * b.fiber;
}

void validate(const GerbeElement& q, double boundary_tolerance) {
  const double d = loop_distance(project(q.beta), difference_loop(q.tau, q.tau_prime));
  if (!(d <= boundary_tolerance)) {
    std::ostringstream msg;
    msg << "GerbeElement: beta is " << d << " away from the difference loop";
    throw Error(ErrorCode::kBoundaryMismatch, msg.str());
  }
}

GerbeElement gerbe_mu(const GerbeElement& q12, const GerbeElement& q23, const ModelOptions& options) {
  if (q12.tau_prime.base != q23.tau.base || !(q12.tau_prime.fiber.samples() == q23.tau.fiber.samples())) {
    throw Error(ErrorCode::kMiddleMismatch, "gerbe_mu: middle loops differ");
  }
  return {q12.tau, q23.tau_prime, product(q12.beta, q23.beta, options)};
}

GerbeElement internal_fusion(const GerbeElement& q12, const GerbeElement& q23, const GerbeFusionContext& ctx,
                             const ModelOptions& options) {
  check_context(q12, ctx, 0, 1, options.boundary_tolerance);
  check_context(q23, ctx, 1, 2, options.boundary_tolerance);
  const BaseLoop base = ctx.base.join(0, 2);
  return {{base, loop_join(ctx.first[0], ctx.first[2])},
          {base, loop_join(ctx.second[0], ctx.second[2])},
          fusion(q12.beta, q23.beta, ctx.induced(), options)};
}

// ---------------------------------------------------------------------------
// Lifts and trivializations

BundleLoop project(const LiftPoint& s) { return {s.base, project(s.a)}; }

double pointwise_distance(const LiftPoint& s, const LiftPoint& t) {
  if (s.base != t.base || !s.a.phi->same_mesh(*t.a.phi)) return kInf;
  double d = 0.0;
  const auto& x = s.a.phi->samples();
  const auto& y = t.a.phi->samples();
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int c = 0; c < 4; ++c) {
      d = std::max(d, std::abs(x[k].components()[static_cast<std::size_t>(c)] -
                               y[k].components()[static_cast<std::size_t>(c)]));
    }
  }
  return std::max(d, turns_between(s.a.z, t.a.z));
}

FusionLiftModel canonical_fusion_lift(const SampledBundle& bundle, const ModelOptions& model) {
  FusionLiftModel m;
  m.bundle = bundle;
  m.model = model;
  m.action = [model](const LiftPoint& s, const ExtElement& g) { return LiftPoint{s.base, product(s.a, g, model)}; };
  m.scalar = [](const LiftPoint& s, const CircleValue& w) { return LiftPoint{s.base, scalar_mul(s.a, w.inverse())}; };
  m.fusion = [model](const LiftPoint& s12, const LiftPoint& s23, const BundlePathTriple& ctx) {
    if (s12.base != ctx.base.join(0, 1) || s23.base != ctx.base.join(1, 2)) {
      throw Error(ErrorCode::kFusionContextMismatch, "lift fusion: base loops are not the joins of the context");
    }
    return LiftPoint{ctx.base.join(0, 2), fusion(s12.a, s23.a, ctx.fiber, model)};
  };
  return m;
}

Trivialization trivialization_from_lift(const FusionLiftModel& lift) {
  Trivialization t;
  t.bundle = lift.bundle;
  t.model = lift.model;
  t.scalar = lift.scalar;
  t.fusion = lift.fusion;
  t.kappa = [action = lift.action, model = lift.model](const GerbeElement& q, const LiftPoint& p) {
    check_over(p, q.tau_prime, model.boundary_tolerance, "kappa");
    return action(p, inverse(q.beta, model));
  };
  return t;
}

FusionLiftModel lift_from_trivialization(const Trivialization& t, int precheck_samples, std::uint64_t seed) {
  if (precheck_samples > 0) {
    const CheckReport r = check_action_condition(t, precheck_samples, seed);
    if (r.status() != CheckStatus::kPass) {
      std::ostringstream msg;
      msg << "lift_from_trivialization: kappa violates the action condition (max error " << r.max_error
          << " turns)";
      throw Error(ErrorCode::kActionConditionViolated, msg.str());
    }
  }
  FusionLiftModel m;
  m.bundle = t.bundle;
  m.model = t.model;
  m.scalar = t.scalar;
  m.fusion = t.fusion;
  m.action = [kappa = t.kappa, model = t.model](const LiftPoint& p, const ExtElement& g) {
    const BundleLoop below = project(p);
    const BundleLoop above{below.base, below.fiber * project(g)};
    return kappa(GerbeElement{above, below, inverse(g, model)}, p);
  };
  return m;
}

Trivialization canonical_trivialization(const SampledBundle& bundle, const ModelOptions& model) {
  return trivialization_from_lift(canonical_fusion_lift(bundle, model));
}

// ---------------------------------------------------------------------------
// Reports

LiftingCheckOptions default_check_options(const MeshResolution& resolution) {
  LiftingCheckOptions o;
  o.resolution = resolution;
  o.checker.extension.shells = resolution.shells;
  o.checker.extension.contraction.seed = 777;
  o.checker.extension.contraction.jitter_angle = 0.6;
  return o;
}

// ---------------------------------------------------------------------------
// Checkers

CheckReport check_action_condition(const Trivialization& t, int samples, std::uint64_t seed,
                                   const LiftingCheckOptions& options) {
  CheckReport r;
  r.name = "action-condition";
  r.tolerance = options.action_tolerance;
  const auto outcomes = shard<Outcome>(samples, [&](int i) {
    const Chain c = random_chain(t.bundle, 2, sample_seed(seed, i, 0), options.resolution);
    const GerbeElement q12 = link(c, 0), q23 = link(c, 1);
    const LiftPoint top{c.base, c.top};
    const LiftPoint lhs = t.kappa(q12, t.kappa(q23, top));
    const LiftPoint rhs = t.kappa(gerbe_mu(q12, q23, t.model), top);
    return from_distance(pointwise_distance(lhs, rhs), options.action_tolerance);
  });
  for (const auto& o : outcomes) merge(r, o);
  return r;
}

RoundTripReport check_round_trips(const FusionLiftModel& lift, const Trivialization& t, int samples,
                                  std::uint64_t seed, const LiftingCheckOptions& options) {
  const FusionLiftModel lift2 = lift_from_trivialization(trivialization_from_lift(lift), 0);
  const Trivialization t2 = trivialization_from_lift(lift_from_trivialization(t, 0));
  RoundTripReport r;
  r.lift.name = "lift-round-trip";
  r.trivialization.name = "trivialization-round-trip";
  r.lift.tolerance = r.trivialization.tolerance = options.pointwise_tolerance;
  struct Pair {
    Outcome lift, triv;
  };
  const auto outcomes = shard<Pair>(samples, [&](int i) {
    const MeshResolution& res = options.resolution;
    const BaseLoop base = random_base_loop(lift.bundle, sample_seed(seed, i, 4), res.angular);
    const LiftPoint p{base, random_element(sample_seed(seed, i, 5), res, 1.5)};
    const ExtElement g = random_element(sample_seed(seed, i, 6), res, 1.2);
    Pair out;
    out.lift = from_distance(pointwise_distance(lift.action(p, g), lift2.action(p, g)), options.pointwise_tolerance);
    const BundleLoop below = project(p);
    const GerbeElement q{{base, below.fiber * pointwise_inverse(project(g))}, below, g};
    out.triv = from_distance(pointwise_distance(t.kappa(q, p), t2.kappa(q, p)), options.pointwise_tolerance);
    return out;
  });
  for (const auto& o : outcomes) {
    merge(r.lift, o.lift);
    merge(r.trivialization, o.triv);
  }
  return r;
}

FusionEquivalenceReport check_fusion_equivalence(const Trivialization& t, int samples, std::uint64_t seed,
                                                 const LiftingCheckOptions& options) {
  FusionEquivalenceReport r;
  r.kappa_side.name = "kappa-fusion-preserving";
  r.action_side.name = "action-fusion-preserving";
  r.inverse_law.name = "fusion-inverse-law";
  r.kappa_side.tolerance = r.action_side.tolerance = r.inverse_law.tolerance = options.checker.circle_tolerance;
  struct Triple {
    Outcome kappa, action, inverse;
  };
  const ModelOptions& model = t.model;
  const auto outcomes = shard<Triple>(samples, [&](int i) {
    const MeshResolution& res = options.resolution;
    const BundlePathTriple alpha = random_bundle_triple(t.bundle, sample_seed(seed, i, 7), res);
    const PathTriple gamma = random_path_triple(sample_seed(seed, i, 8), 3, 1.5, 1.0, res.path_segments(),
                                                res.path_collar());
    const BundlePathTriple moved{alpha.base, alpha.fiber * gamma};
    auto over = [&](const BundlePathTriple& ctx, int a, int b, std::uint64_t tag) {
      return LiftPoint{ctx.base.join(a, b),
                       random_element_over(ctx.fiber[a], ctx.fiber[b], sample_seed(seed, i, tag), res)};
    };
    const LiftPoint t12 = over(alpha, 0, 1, 9), t23 = over(alpha, 1, 2, 10);
    const ExtElement b12 = random_element_over(gamma[0], gamma[1], sample_seed(seed, i, 11), res);
    const ExtElement b23 = random_element_over(gamma[1], gamma[2], sample_seed(seed, i, 12), res);

    // q_ij lies over (l(alpha gamma), l(alpha)), so kappa(q_ij x t_ij) = t_ij . b_ij.
    auto q = [&](const LiftPoint& s, const ExtElement& b) {
      const BundleLoop below = project(s);
      return GerbeElement{{below.base, below.fiber * project(b)}, below, inverse(b, model)};
    };
    const GerbeElement q12 = q(t12, b12), q23 = q(t23, b23);
    const LiftPoint t12b = t.kappa(q12, t12), t23b = t.kappa(q23, t23);
    const LiftPoint fused_t = t.fusion(t12, t23, alpha);
    const ExtElement fused_b = fusion(b12, b23, gamma, model);

    // Common to both sides: lambda_T(t12 b12 x t23 b23).
    const LiftPoint moved_fused = t.fusion(t12b, t23b, moved);

    const GerbeFusionContext ctx{alpha.base, moved.fiber, alpha.fiber};
    const GerbeElement q13 = internal_fusion(q12, q23, ctx, model);
    const LiftPoint lhs_i = t.kappa(q13, fused_t);

    const GerbeElement g13{{fused_t.base, project(fused_t.a) * project(fused_b)}, project(fused_t),
                           inverse(fused_b, model)};
    const LiftPoint rhs_ii = t.kappa(g13, fused_t);

    Triple out;
    out.kappa = compare_points(lhs_i, moved_fused, options.checker);
    out.action = compare_points(moved_fused, rhs_ii, options.checker);
    const ExtElement inv_fused = fusion(inverse(b12, model), inverse(b23, model), inverse_triple(gamma), model);
    out.inverse = from_equivalence(equivalent(inverse(fused_b, model), inv_fused, options.checker));
    return out;
  });
  for (const auto& o : outcomes) {
    merge(r.kappa_side, o.kappa);
    merge(r.action_side, o.action);
    merge(r.inverse_law, o.inverse);
    if (o.kappa.status == o.action.status) {
      ++r.concordant;
    } else {
      ++r.discordant;
    }
  }
  return r;
}

CheckReport check_mu_fusion_preserving(int samples, std::uint64_t seed, const ModelOptions& model,
                                       const LiftingCheckOptions& options) {
  CheckReport r;
  r.name = "mu-fusion-preserving";
  r.tolerance = options.checker.circle_tolerance;
  const SampledBundle bundle;
  const auto outcomes = shard<Outcome>(samples, [&](int i) {
    const MeshResolution& res = options.resolution;
    const BundlePathTriple a = random_bundle_triple(bundle, sample_seed(seed, i, 13), res);
    auto g = [&](std::uint64_t tag) {
      return random_path_triple(sample_seed(seed, i, tag), 3, 1.2, 0.8, res.path_segments(), res.path_collar());
    };
    const PathTriple s1 = a.fiber, s2 = s1 * g(14), s3 = s2 * g(15);
    const GerbeFusionContext c12{a.base, s1, s2}, c23{a.base, s2, s3}, c13{a.base, s1, s3};
    auto element = [&](const GerbeFusionContext& c, int x, int y, std::uint64_t tag) {
      const PathTriple d = c.induced();
      const BaseLoop base = c.base.join(x, y);
      return GerbeElement{{base, loop_join(c.first[x], c.first[y])},
                          {base, loop_join(c.second[x], c.second[y])},
                          random_element_over(d[x], d[y], sample_seed(seed, i, tag), res)};
    };
    const GerbeElement q12 = element(c12, 0, 1, 16), q23 = element(c12, 1, 2, 17);
    const GerbeElement p12 = element(c23, 0, 1, 18), p23 = element(c23, 1, 2, 19);
    const GerbeElement lhs =
        gerbe_mu(internal_fusion(q12, q23, c12, model), internal_fusion(p12, p23, c23, model), model);
    const GerbeElement rhs = internal_fusion(gerbe_mu(q12, p12, model), gerbe_mu(q23, p23, model), c13, model);
    if (lhs.tau.base != rhs.tau.base || loop_distance(lhs.tau.fiber, rhs.tau.fiber) != 0.0 ||
        loop_distance(lhs.tau_prime.fiber, rhs.tau_prime.fiber) != 0.0) {
      return Outcome{CheckStatus::kFail, kInf};
    }
    return from_equivalence(equivalent(lhs.beta, rhs.beta, options.checker));
  });
  for (const auto& o : outcomes) merge(r, o);
  return r;
}

CheckReport check_gerbe_associativity(int samples, std::uint64_t seed, const ModelOptions& model,
                                      const LiftingCheckOptions& options) {
  CheckReport r;
  r.name = "gerbe-mu-associativity";
  r.tolerance = options.checker.circle_tolerance;
  const auto outcomes = shard<Outcome>(samples, [&](int i) {
    const Chain c = random_chain(SampledBundle{}, 3, sample_seed(seed, i, 20), options.resolution);
    const GerbeElement q12 = link(c, 0), q23 = link(c, 1), q34 = link(c, 2);
    const GerbeElement lhs = gerbe_mu(gerbe_mu(q12, q23, model), q34, model);
    const GerbeElement rhs = gerbe_mu(q12, gerbe_mu(q23, q34, model), model);
    return from_equivalence(equivalent(lhs.beta, rhs.beta, options.checker));
  });
  for (const auto& o : outcomes) merge(r, o);
  return r;
}

// ---------------------------------------------------------------------------
// Mutations

const char* to_string(LiftMutation m) noexcept {
  switch (m) {
    case LiftMutation::kKappaTwist: return "kappa-twist";
    case LiftMutation::kFusionTwist: return "fusion-twist";
    case LiftMutation::kFusionWzSign: return "fusion-wz-sign";
  }
  return "unknown";
}

Trivialization mutate(const Trivialization& t, LiftMutation m) {
  Trivialization out = t;
  switch (m) {
    case LiftMutation::kKappaTwist:
      out.kappa = [kappa = t.kappa](const GerbeElement& q, const LiftPoint& p) {
        LiftPoint r = kappa(q, p);
        r.a.z = r.a.z * CircleValue::from_turns(0.1 + 0.2 * mean_real_part(q.tau.fiber));
        return r;
      };
      break;
    case LiftMutation::kFusionTwist:
      out.fusion = [fuse = t.fusion](const LiftPoint& s12, const LiftPoint& s23, const BundlePathTriple& ctx) {
        LiftPoint r = fuse(s12, s23, ctx);
        const double w = 0.2 * (mean_real_part(project(s12.a)) + mean_real_part(project(s23.a)));
        r.a.z = r.a.z * CircleValue::from_turns(w);
        return r;
      };
      break;
    case LiftMutation::kFusionWzSign:
      out.fusion = [fuse = t.fusion](const LiftPoint& s12, const LiftPoint& s23, const BundlePathTriple& ctx) {
        LiftPoint r = fuse(s12, s23, ctx);
        const CircleValue outer = s12.a.z * s23.a.z;
        r.a.z = outer * outer * r.a.z.inverse();
        return r;
      };
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random data

BaseLoop random_base_loop(const SampledBundle& bundle, std::uint64_t seed, int samples) {
  Rng rng(seed, 0x51);
  const int n = bundle.base_points;
  const int start = static_cast<int>(rng.uniform() * n);
  const int winding = static_cast<int>(rng.uniform() * 5.0) - 2;
  const double wobble = rng.uniform(-0.2, 0.2) * n;
  BaseLoop out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const double v = start + winding * n * t + wobble * std::sin(2.0 * std::numbers::pi * t);
    out[static_cast<std::size_t>(k)] = ((static_cast<int>(std::lround(v)) % n) + n) % n;
  }
  return out;
}

BasePathTriple random_base_triple(const SampledBundle& bundle, std::uint64_t seed, int segments) {
  Rng rng(seed, 0x52);
  const int n = bundle.base_points;
  const int from = static_cast<int>(rng.uniform() * n);
  const int to = from + static_cast<int>(rng.uniform(-0.5, 0.5) * n);
  std::array<std::vector<int>, 3> p;
  for (auto& path : p) path = ramp_path(from, to, segments, n, rng.uniform(-0.3, 0.3) * n);
  return BasePathTriple(std::move(p[0]), std::move(p[1]), std::move(p[2]));
}

BundlePathTriple random_bundle_triple(const SampledBundle& bundle, std::uint64_t seed,
                                      const MeshResolution& resolution) {
  return {random_base_triple(bundle, seed, resolution.path_segments()),
          random_path_triple(seed, 3, 1.5, 1.0, resolution.path_segments(), resolution.path_collar())};
}

}  // namespace loopext
