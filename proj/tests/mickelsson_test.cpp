// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "loopext/errors.hpp"
#include "loopext/mickelsson.hpp"

using namespace loopext;

namespace {

const MeshResolution kRes{33, 128, 16};

ModelOptions options(std::uint64_t center_seed = 0, double jitter = 0.0) {
  ModelOptions o;
  o.extension.shells = kRes.shells;
  o.extension.contraction.seed = center_seed;
  o.extension.contraction.jitter_angle = jitter;
  return o;
}

// The checker extends from its own jittered center so that chart-wise
// cancellation between equal cones cannot hide errors.
const ModelOptions kChecker = options(777, 0.6);

ExtElement elem(std::uint64_t seed) { return random_element(seed, kRes, 1.5); }

std::vector<SampledPath> paths(std::uint64_t seed, int count) {
  return random_path_family(count, seed, 3, 1.5, 1.0, kRes.path_segments(), kRes.path_collar());
}

double turns(const CircleValue& a, const CircleValue& b) { return circle_distance(a, b) / (2 * std::numbers::pi); }

}  // namespace

TEST_CASE("identity element") {
  const ExtElement e = identity_element(kRes);
  CHECK(equivalent(product(e, e, options()), e, kChecker));
  const SampledLoop l = project(e);
  for (const auto& g : l.samples()) CHECK(g == GroupElement::identity());
  const CircleValue w = CircleValue::from_turns(0.2);
  CHECK(scalar_mul(e, w).z == w);
}

TEST_CASE("product z-part is z1 z2 exp(-2 pi i int rho)") {
  const ExtElement a = elem(1), b = elem(2);
  const ModelOptions o = options();
  const ExtElement ab = product(a, b, o);
  const double rho = integrate_rho_disk(*a.phi, *b.phi, o.pairing_or_default());
  CHECK(turns(ab.z, a.z * b.z * CircleValue::from_turns(-rho)) < 1e-14);
  CHECK(std::abs(rho) > 1e-3);
  CHECK(loop_distance(project(ab), project(a) * project(b)) == 0.0);
}

TEST_CASE("identity is a two-sided unit") {
  const ExtElement a = elem(3);
  const ExtElement e = identity_element(kRes);
  CHECK(equivalent(product(e, a, options()), a, kChecker));
  CHECK(equivalent(product(a, e, options()), a, kChecker));
  CHECK(product(e, a, options()).z == a.z);
}

TEST_CASE("equivalence relation") {
  const ExtElement a = elem(4);
  CHECK(equivalent(a, a, kChecker));
  const auto far = equivalent(a, scalar_mul(a, CircleValue::from_turns(0.3)), kChecker);
  CHECK(far.verdict == Verdict::kNotEquivalent);
  CHECK(far.circle_distance == doctest::Approx(0.3).epsilon(1e-6));
  const ExtElement b = rebuild_filling(a, 9, 1.0, options());
  CHECK(loop_distance(project(a), project(b)) == 0.0);
  CHECK(a.phi->samples() != b.phi->samples());
  CHECK(equivalent(a, b, kChecker));
  CHECK(equivalent(b, a, kChecker));
  const auto gray = equivalent(a, scalar_mul(b, CircleValue::from_turns(5e-3)), kChecker);
  CHECK(gray.verdict == Verdict::kIndeterminate);
  const auto other = equivalent(a, elem(5), kChecker);
  CHECK(other.verdict == Verdict::kNotEquivalent);
  CHECK(std::isinf(other.circle_distance));
}

TEST_CASE("inverse") {
  const ExtElement e = identity_element(kRes);
  CHECK(equivalent(inverse(e, options()), e, kChecker));
  for (std::uint64_t s = 10; s < 13; ++s) {
    const ExtElement a = elem(s);
    CHECK(equivalent(product(a, inverse(a, options()), options()), e, kChecker));
    CHECK(equivalent(product(inverse(a, options()), a, options()), e, kChecker));
    CHECK(equivalent(inverse(inverse(a, options()), options()), a, kChecker));
  }
}

TEST_CASE("scalars are central") {
  const ExtElement a = elem(20), b = elem(21);
  const CircleValue w = CircleValue::from_turns(0.137), v = CircleValue::from_turns(-0.41);
  CHECK(turns(product(scalar_mul(a, w), b, options()).z, scalar_mul(product(a, b, options()), w).z) < 1e-14);
  CHECK(turns(product(a, scalar_mul(b, w), options()).z, scalar_mul(product(a, b, options()), w).z) < 1e-14);
  CHECK(turns(scalar_mul(scalar_mul(a, w), v).z, scalar_mul(a, w * v).z) < 1e-15);
  CHECK(scalar_mul(a, CircleValue::one()).z == a.z);
  CHECK(loop_distance(project(scalar_mul(a, w)), project(a)) == 0.0);
}

TEST_CASE("product is well defined on classes and associative") {
  for (std::uint64_t s = 30; s < 33; ++s) {
    const ExtElement a = elem(s), b = elem(s + 100), c = elem(s + 200);
    const ExtElement a2 = rebuild_filling(a, s + 1, 1.0, options());
    const ExtElement b2 = rebuild_filling(b, s + 2, 1.0, options());
    CHECK(equivalent(product(a, b, options()), product(a2, b2, options()), kChecker));
    CHECK(equivalent(product(product(a, b, options()), c, options()), product(a, product(b, c, options()), options()),
                     kChecker));
  }
}

TEST_CASE("a product with the sign of rho flipped is not well defined") {
  const auto bad = [](const ExtElement& a, const ExtElement& b) {
    ExtElement p = product(a, b, options());
    const double rho = integrate_rho_disk(*a.phi, *b.phi, options().pairing_or_default());
    return scalar_mul(p, CircleValue::from_turns(2 * rho));
  };
  int failures = 0;
  for (std::uint64_t s = 40; s < 43; ++s) {
    const ExtElement a = elem(s), b = elem(s + 100);
    const ExtElement a2 = rebuild_filling(a, s + 1, 1.5, options());
    const ExtElement b2 = rebuild_filling(b, s + 2, 1.5, options());
    failures += equivalent(bad(a, b), bad(a2, b2), kChecker).verdict == Verdict::kNotEquivalent;
  }
  CHECK(failures > 0);
}

TEST_CASE("product mesh mismatch") {
  CHECK_THROWS_AS(product(elem(1), random_element(2, {17, 128, 8}), options()), Error);
}

TEST_CASE("fusion of constant data") {
  const SampledPath e = SampledPath::constant(GroupElement::identity(), kRes.path_segments(), kRes.path_collar());
  const FusionContext ctx(e, e, e);
  const ExtElement a = scalar_mul(identity_element(kRes), CircleValue::from_turns(0.1));
  const ExtElement b = scalar_mul(identity_element(kRes), CircleValue::from_turns(0.25));
  const ExtElement f = fusion(a, b, ctx, options());
  CHECK(turns(f.z, CircleValue::from_turns(0.35)) < 1e-15);
  for (const auto& g : f.phi->samples()) CHECK(g == GroupElement::identity());
}

TEST_CASE("fusion projects to l(gamma_1, gamma_3) and is equivariant") {
  const auto g = paths(50, 3);
  const FusionContext ctx(g[0], g[1], g[2]);
  const ExtElement a12 = random_element_over(g[0], g[1], 1, kRes), a23 = random_element_over(g[1], g[2], 2, kRes);
  const ExtElement f = fusion(a12, a23, ctx, options());
  CHECK(loop_distance(project(f), loop_join(g[0], g[2])) == 0.0);
  const CircleValue w = CircleValue::from_turns(0.31);
  CHECK(turns(fusion(scalar_mul(a12, w), a23, ctx, options()).z, scalar_mul(f, w).z) < 1e-14);
  CHECK(turns(fusion(a12, scalar_mul(a23, w), ctx, options()).z, scalar_mul(f, w).z) < 1e-14);
  try {
    fusion(a23, a12, ctx, options());
    FAIL("expected BoundaryMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBoundaryMismatch);
  }
}

TEST_CASE("fusion does not depend on the filling of l(gamma_1, gamma_3)") {
  for (std::uint64_t s = 60; s < 63; ++s) {
    const auto g = paths(s, 3);
    const FusionContext ctx(g[0], g[1], g[2]);
    const ExtElement a12 = random_element_over(g[0], g[1], s, kRes), a23 = random_element_over(g[1], g[2], s + 1, kRes);
    ModelOptions o1 = options(s + 5, 0.6), o2 = options(s + 6, 0.6);
    o1.fill.contraction = {s, 0.5};
    o2.fill.contraction = {s + 99, 0.5};
    const ExtElement x = fusion(a12, a23, ctx, o1), y = fusion(a12, a23, ctx, o2);
    CHECK(x.phi->samples() != y.phi->samples());
    CHECK(equivalent(x, y, kChecker));
  }
}

TEST_CASE("fusion is associative") {
  for (std::uint64_t s = 70; s < 72; ++s) {
    const auto g = paths(s, 4);
    const ExtElement a12 = random_element_over(g[0], g[1], s, kRes);
    const ExtElement a23 = random_element_over(g[1], g[2], s + 1, kRes);
    const ExtElement a34 = random_element_over(g[2], g[3], s + 2, kRes);
    const ExtElement left = fusion(fusion(a12, a23, {g[0], g[1], g[2]}, options(s + 1, 0.6)), a34,
                                   {g[0], g[2], g[3]}, options(s + 2, 0.6));
    const ExtElement right = fusion(a12, fusion(a23, a34, {g[1], g[2], g[3]}, options(s + 3, 0.6)),
                                    {g[0], g[1], g[3]}, options(s + 4, 0.6));
    CHECK(equivalent(left, right, kChecker));
  }
}

TEST_CASE("fusion is multiplicative") {
  for (std::uint64_t s = 80; s < 82; ++s) {
    const auto g = paths(s, 3), h = paths(s + 50, 3);
    const FusionContext cg(g[0], g[1], g[2]), ch(h[0], h[1], h[2]);
    const ExtElement a12 = random_element_over(g[0], g[1], s, kRes), a23 = random_element_over(g[1], g[2], s + 1, kRes);
    const ExtElement b12 = random_element_over(h[0], h[1], s + 2, kRes), b23 = random_element_over(h[1], h[2], s + 3, kRes);
    const ExtElement lhs = product(fusion(a12, a23, cg, options()), fusion(b12, b23, ch, options()), options());
    const ExtElement rhs =
        fusion(product(a12, b12, options()), product(a23, b23, options()), cg * ch, options());
    CHECK(equivalent(lhs, rhs, kChecker));
  }
}
