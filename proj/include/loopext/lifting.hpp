// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Lifting gerbe of the looped trivial bundle P = M x SU(2) over M = S^1, its
// internal fusion product, and the two constructions between trivializations
// and fusion lifts, with sampled checkers for their defining conditions.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loopext/check.hpp"
#include "loopext/mesh.hpp"
#include "loopext/mickelsson.hpp"

namespace loopext {

/// M = S^1 sampled as `base_points` cyclic points; P = M x G.
struct SampledBundle {
  int base_points = 64;
};

/// A loop in M as indices of base points, one per loop sample.
using BaseLoop = std::vector<int>;

/// Paths in M with common endpoints, joined with the layout of loop_join.
class BasePathTriple {
 public:
  BasePathTriple(std::vector<int> p1, std::vector<int> p2, std::vector<int> p3);
  const std::vector<int>& operator[](int k) const { return paths_[static_cast<std::size_t>(k)]; }
  int segments() const { return static_cast<int>(paths_[0].size()) - 1; }
  BaseLoop join(int i, int j) const;

 private:
  std::array<std::vector<int>, 3> paths_;
};

/// A loop in P in trivialization coordinates.
struct BundleLoop {
  BaseLoop base;
  SampledLoop fiber;
};

/// Three paths in P with common endpoints.
struct BundlePathTriple {
  BasePathTriple base;
  PathTriple fiber;

  BundleLoop join(int i, int j) const { return {base.join(i, j), loop_join(fiber[i], fiber[j])}; }
};

/// Three paths in P^[2]: a common base triple with two fiber sheets.
struct GerbeFusionContext {
  BasePathTriple base;
  PathTriple first, second;

  BundlePathTriple first_triple() const { return {base, first}; }
  BundlePathTriple second_triple() const { return {base, second}; }
  /// The G-triple of pointwise differences first^-1 second.
  PathTriple induced() const;
};

/// An element (tau, tau', beta) of the circle bundle of the lifting gerbe.
struct GerbeElement {
  BundleLoop tau, tau_prime;
  ExtElement beta;
};

/// Pointwise a_fib^-1 b_fib. Throws Error(kBaseMismatch) unless the base
/// loops agree and the fiber loops have the same size.
SampledLoop difference_loop(const BundleLoop& a, const BundleLoop& b);

/// Throws Error(kBaseMismatch) or Error(kBoundaryMismatch) when the bases
/// differ or beta does not project to the difference loop.
void validate(const GerbeElement& q, double boundary_tolerance = 1e-9);

/// (q12.tau, q23.tau', beta12 beta23). Throws Error(kMiddleMismatch) unless
/// q12.tau' and q23.tau agree sample-wise.
GerbeElement gerbe_mu(const GerbeElement& q12, const GerbeElement& q23, const ModelOptions& options = {});

/// (tau13, tau13', fusion(beta12, beta23)) over the induced G-triple.
/// Throws Error(kFusionContextMismatch) unless the loops of q12 and q23 are
/// the joins of the context.
GerbeElement internal_fusion(const GerbeElement& q12, const GerbeElement& q23, const GerbeFusionContext& ctx,
                             const ModelOptions& options = {});

/// A point of the total space: a base loop and an extension element whose
/// boundary is the fiber loop.
struct LiftPoint {
  BaseLoop base;
  ExtElement a;
};

BundleLoop project(const LiftPoint& s);

/// Largest of the disk-sample difference and the circle difference in turns;
/// +inf when bases or meshes differ. Compares representatives, not classes.
double pointwise_distance(const LiftPoint& s, const LiftPoint& t);

using LiftAction = std::function<LiftPoint(const LiftPoint&, const ExtElement&)>;
using ScalarAction = std::function<LiftPoint(const LiftPoint&, const CircleValue&)>;
using LiftFusion = std::function<LiftPoint(const LiftPoint&, const LiftPoint&, const BundlePathTriple&)>;
using Kappa = std::function<LiftPoint(const GerbeElement&, const LiftPoint&)>;

/// A lift of LP to the extension, with a fusion product on its circle bundle.
struct FusionLiftModel {
  SampledBundle bundle;
  ModelOptions model;
  LiftAction action;
  ScalarAction scalar;
  LiftFusion fusion;
};

/// A trivialization (T, kappa) of the lifting gerbe with a fusion product on T.
struct Trivialization {
  SampledBundle bundle;
  ModelOptions model;
  Kappa kappa;
  ScalarAction scalar;
  LiftFusion fusion;
};

/// Totals are pairs (l, a) with projection (l, d a); (l, a).g = (l, a g);
/// the circle acts through inversion, (l, a).w = (l, (phi, z / w)); fusion is
/// the extension's fusion on the second slot.
FusionLiftModel canonical_fusion_lift(const SampledBundle& bundle, const ModelOptions& model = {});

/// kappa(q x t) = t . beta^-1, working over (tau, tau').
Trivialization trivialization_from_lift(const FusionLiftModel& lift);

/// p . g = kappa(g^-1 x p), working over (p g, p). Runs check_action_condition
/// on `precheck_samples` samples first and throws
/// Error(kActionConditionViolated) when it fails.
FusionLiftModel lift_from_trivialization(const Trivialization& t, int precheck_samples = 3,
                                         std::uint64_t seed = 0);

/// The canonical trivialization, trivialization_from_lift(canonical_fusion_lift).
Trivialization canonical_trivialization(const SampledBundle& bundle, const ModelOptions& model = {});

// Checkers. Each sample is generated from (seed, index) and evaluated
// independently; samples are sharded over threads and merged by index.

struct LiftingCheckOptions {
  MeshResolution resolution{33, 128, 16};
  ModelOptions checker;            // equivalence checks; use its own extension center
  double pointwise_tolerance = 1e-12;
  double action_tolerance = 1e-9;  // in turns
};

/// Options with the checker extending from a jittered center of its own.
LiftingCheckOptions default_check_options(const MeshResolution& resolution = {33, 128, 16});

/// kappa(q12 x kappa(q23 x t)) against kappa(mu(q12 x q23) x t), compared
/// pointwise within action_tolerance. Zero samples give a vacuous report.
CheckReport check_action_condition(const Trivialization& t, int samples, std::uint64_t seed,
                                   const LiftingCheckOptions& options = {});

/// lift -> trivialization -> lift reproduces the action, and
/// trivialization -> lift -> trivialization reproduces kappa, pointwise.
struct RoundTripReport {
  CheckReport lift, trivialization;
};

RoundTripReport check_round_trips(const FusionLiftModel& lift, const Trivialization& t, int samples,
                                  std::uint64_t seed, const LiftingCheckOptions& options = {});

/// Both sides of the fusion-lift equivalence on the same samples:
///   (i)  kappa(lambda(q12 x q23) x lambda_T(t12 x t23)) ~ lambda_T(kappa(q12 x t12) x kappa(q23 x t23))
///   (ii) lambda_T(t12 b12 x t23 b23) ~ lambda_T(t12 x t23) lambda(b12 x b23)
/// with q_ij = (l(alpha gamma), l(alpha), b_ij^-1), plus the inverse law
/// lambda(b12 x b23)^-1 ~ lambda(b12^-1 x b23^-1) that links them.
struct FusionEquivalenceReport {
  CheckReport kappa_side, action_side, inverse_law;
  int concordant = 0;
  int discordant = 0;
};

FusionEquivalenceReport check_fusion_equivalence(const Trivialization& t, int samples, std::uint64_t seed,
                                                 const LiftingCheckOptions& options = {});

/// mu(lambda(q12 x q23) x lambda(q12' x q23')) ~ lambda(mu(q12 x q12') x mu(q23 x q23'))
/// over three sheets.
CheckReport check_mu_fusion_preserving(int samples, std::uint64_t seed, const ModelOptions& model,
                                       const LiftingCheckOptions& options = {});

/// gerbe_mu(gerbe_mu(q12, q23), q34) ~ gerbe_mu(q12, gerbe_mu(q23, q34)).
CheckReport check_gerbe_associativity(int samples, std::uint64_t seed, const ModelOptions& model,
                                      const LiftingCheckOptions& options = {});

// Deliberate defects for checker sensitivity.

enum class LiftMutation {
  kKappaTwist,     // kappa times a circle factor depending on tau
  kFusionTwist,    // lambda_T times a factor depending on the fiber loops
  kFusionWzSign,   // lambda_T with exp(-2 pi i S_WZ)
};

const char* to_string(LiftMutation m) noexcept;

Trivialization mutate(const Trivialization& t, LiftMutation m);

// Random data.

BasePathTriple random_base_triple(const SampledBundle& bundle, std::uint64_t seed, int segments);
BundlePathTriple random_bundle_triple(const SampledBundle& bundle, std::uint64_t seed,
                                      const MeshResolution& resolution);
BaseLoop random_base_loop(const SampledBundle& bundle, std::uint64_t seed, int samples);

}  // namespace loopext
