// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "loopext/errors.hpp"
#include "loopext/lie.hpp"
#include "loopext/random.hpp"
#include "oracles.hpp"

using namespace loopext;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
const GroupElement kI = GroupElement::from_unit(0, 1, 0, 0);
const GroupElement kJ = GroupElement::from_unit(0, 0, 1, 0);
const GroupElement kK = GroupElement::from_unit(0, 0, 0, 1);
}  // namespace

TEST_CASE("group_mul: identity, inverse and quaternion units") {
  Rng rng(1);
  const GroupElement g = rng.group_element();
  CHECK(component_distance(GroupElement::identity() * g, g) == 0.0);
  CHECK(component_distance(g * g.inverse(), GroupElement::identity()) < 4 * kEps);
  CHECK(kI * kJ == kK);
  CHECK(kJ * kK == kI);
  CHECK(kK * kI == kJ);
}

TEST_CASE("group_mul agrees with the matrix realization") {
  Rng rng(2);
  for (int n = 0; n < 200; ++n) {
    const GroupElement a = rng.group_element();
    const GroupElement b = rng.group_element();
    CHECK(oracle::max_diff(oracle::group(a * b), oracle::mul(oracle::group(a), oracle::group(b))) < 1e-14);
  }
}

TEST_CASE("group_mul keeps unit norm") {
  Rng rng(3);
  GroupElement g;
  for (int n = 0; n < 10000; ++n) g = g * rng.group_element();
  const auto& q = g.components();
  CHECK(std::abs(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] - 1.0) < 4 * kEps);
}

TEST_CASE("exp agrees with the matrix exponential") {
  Rng rng(4);
  for (int n = 0; n < 200; ++n) {
    const AlgElement x = rng.normal_vector() * 1.2;
    CHECK(oracle::max_diff(oracle::group(exp_map(x)), oracle::expm(oracle::alg(x))) < 1e-13);
  }
  CHECK(exp_map({}) == GroupElement::identity());
  CHECK(oracle::max_diff(oracle::group(exp_map({1e-10, -2e-10, 3e-10})),
                         oracle::expm(oracle::alg({1e-10, -2e-10, 3e-10}))) < 1e-18);
}

TEST_CASE("log_map inverts exp") {
  CHECK(log_map(GroupElement::identity()) == AlgElement{});
  Rng rng(5);
  for (int n = 0; n < 500; ++n) {
    const AlgElement x = rng.unit_vector() * rng.uniform(0.0, std::numbers::pi - 1e-3);
    CHECK((log_map(exp_map(x)) - x).norm() < 1e-12);
  }
}

TEST_CASE("exp(log g) = g to ten machine epsilons away from the antipode") {
  Rng rng(6);
  for (int n = 0; n < 2000; ++n) {
    const GroupElement g = rng.group_element();
    if (angle_from_identity(g) > std::numbers::pi - 1e-3) continue;
    CHECK(component_distance(exp_map(log_map(g)) * GroupElement::identity(), g) <= 10 * kEps);
  }
}

TEST_CASE("log_map near the antipode") {
  // Angle pi - 1e-9 about a unit axis n: w = cos(pi - d) = -cos d, sin part = sin d.
  const double d = 1e-9;
  const AlgElement axis = AlgElement{1.0, 2.0, -2.0} * (1.0 / 3.0);
  const double s = std::sin(d);
  const GroupElement g = GroupElement::from_quaternion(-std::cos(d), s * axis.x, s * axis.y, s * axis.z);
  const AlgElement x = log_map(g, 1e-12);
  // Series oracle: angle = pi - asin(s), asin(s) = s + s^3/6 + ...
  const double expected = std::numbers::pi - (s + s * s * s / 6.0);
  CHECK(std::isfinite(x.norm()));
  CHECK(std::abs(x.norm() - expected) < 1e-12);
  CHECK((x * (1.0 / x.norm()) - axis).norm() < 1e-6);
}

TEST_CASE("log_map rejects the antipode") {
  const GroupElement minus_e = GroupElement::from_unit(-1, 0, 0, 0);
  CHECK_THROWS_AS(log_map(minus_e), Error);
  try {
    log_map(exp_map({std::numbers::pi - 1e-8, 0, 0}));
    FAIL("expected AntipodalSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAntipodalSingularity);
  }
  CHECK_NOTHROW(log_map(exp_map({std::numbers::pi - 1e-8, 0, 0}), 1e-9));
}

TEST_CASE("adjoint agrees with matrix conjugation") {
  Rng rng(7);
  for (int n = 0; n < 100; ++n) {
    const GroupElement g = rng.group_element();
    const AlgElement x = rng.normal_vector();
    const auto G = oracle::group(g);
    const auto ad = oracle::coords(oracle::mul(oracle::mul(G, oracle::alg(x)), oracle::adjoint_of(G)));
    CHECK((adjoint(g, x) - ad).norm() < 1e-14);
  }
}

TEST_CASE("dexp agrees with a difference quotient of exp") {
  Rng rng(8);
  for (int n = 0; n < 50; ++n) {
    const AlgElement x = rng.normal_vector() * 0.8;
    const AlgElement y = rng.normal_vector();
    const double h = 1e-5;
    const auto G = oracle::group(exp_map(x));
    const auto diff = oracle::scale(
        oracle::add(oracle::group(exp_map(x + y * h)), oracle::scale(oracle::group(exp_map(x - y * h)), -1.0)),
        0.5 / h);
    const AlgElement fd = oracle::coords(oracle::mul(oracle::adjoint_of(G), diff));
    CHECK((dexp(x, y) - fd).norm() < 1e-8);
  }
  const AlgElement y{0.3, -0.2, 0.5};
  CHECK((dexp({1e-6, 0, 0}, y) - y).norm() < 1e-5);
}

TEST_CASE("bracket is the matrix commutator, antisymmetric, and satisfies Jacobi") {
  Rng rng(9);
  for (int n = 0; n < 500; ++n) {
    const AlgElement x = rng.normal_vector(), y = rng.normal_vector(), z = rng.normal_vector();
    const auto X = oracle::alg(x), Y = oracle::alg(y);
    const auto comm = oracle::add(oracle::mul(X, Y), oracle::scale(oracle::mul(Y, X), -1.0));
    CHECK((bracket(x, y) - oracle::coords(comm)).norm() < 1e-13);
    CHECK(bracket(x, y) == -bracket(y, x));
    const AlgElement jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    CHECK(jac.norm() < 1e-12);
  }
}

TEST_CASE("h_density: antisymmetry and normalization") {
  const PairingConstant p{0.75};
  CHECK(h_density({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, p) == 0.75);
  Rng rng(10);
  for (int n = 0; n < 300; ++n) {
    const AlgElement a = rng.normal_vector(), b = rng.normal_vector(), c = rng.normal_vector();
    const double v = h_density(a, b, c, p);
    CHECK(h_density(a, a, c, p) == 0.0);
    CHECK(h_density(b, a, c, p) == doctest::Approx(-v).epsilon(1e-14));
    CHECK(h_density(a, c, b, p) == doctest::Approx(-v).epsilon(1e-14));
    CHECK(h_density(c, b, a, p) == doctest::Approx(-v).epsilon(1e-14));
    CHECK(h_density(b, c, a, p) == doctest::Approx(v).epsilon(1e-14));
    CHECK(h_density(c, a, b, p) == doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("h_density equals one sixth of <theta, [theta, theta]> on the frame") {
  // (1/6) sum over permutations sign(s) <a_s1, [a_s2, a_s3]> with the
  // bracket-wedge convention reduces to <a, [b, c]> / 2 = det.
  Rng rng(11);
  const PairingConstant p{1.0};
  for (int n = 0; n < 50; ++n) {
    const AlgElement a = rng.normal_vector(), b = rng.normal_vector(), c = rng.normal_vector();
    const double via_matrix = 0.5 * oracle::pairing(
        oracle::alg(a), oracle::add(oracle::mul(oracle::alg(b), oracle::alg(c)),
                                    oracle::scale(oracle::mul(oracle::alg(c), oracle::alg(b)), -1.0)));
    CHECK(h_density(a, b, c, p) == doctest::Approx(via_matrix).epsilon(1e-12));
  }
}

TEST_CASE("rho_density matches the matrix oracle") {
  Rng rng(12);
  const PairingConstant p{0.37};
  for (int n = 0; n < 300; ++n) {
    const GroupElement g1 = rng.group_element(), g2 = rng.group_element();
    const TangentPair t1{rng.normal_vector(), rng.normal_vector()};
    const TangentPair t2{rng.normal_vector(), rng.normal_vector()};
    const auto G1 = oracle::group(g1), G2 = oracle::group(g2);
    // Actual tangent matrices at g1 and g2.
    const auto v1 = oracle::mul(G1, oracle::alg(t1.first));
    const auto w1 = oracle::mul(G2, oracle::alg(t1.second));
    const auto v2 = oracle::mul(G1, oracle::alg(t2.first));
    const auto w2 = oracle::mul(G2, oracle::alg(t2.second));
    const double want = oracle::rho(G1, G2, v1, w1, v2, w2, p.kappa);
    CHECK(rho_density(g1, g2, t1, t2, p) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("rho_density: degenerate and antisymmetric cases") {
  Rng rng(13);
  const PairingConstant p{1.0};
  for (int n = 0; n < 300; ++n) {
    const GroupElement g1 = rng.group_element(), g2 = rng.group_element();
    const TangentPair t1{rng.normal_vector(), rng.normal_vector()};
    const TangentPair t2{rng.normal_vector(), rng.normal_vector()};
    CHECK(rho_density(g1, g2, {t1.first, {}}, {t2.first, {}}, p) == 0.0);
    CHECK(rho_density(g1, g2, t1, t1, p) == 0.0);
    CHECK(rho_density(g1, g2, t1, t2, p) == -rho_density(g1, g2, t2, t1, p));
  }
}

TEST_CASE("CircleValue: normalization and group law") {
  const CircleValue a(std::complex<double>(3.0, 4.0));
  CHECK(std::abs(std::abs(a.value()) - 1.0) < 1e-15);
  const CircleValue w = CircleValue::from_turns(0.3);
  CHECK(w.turns() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(circle_distance(w * w.inverse(), CircleValue::one()) < 1e-15);
  CHECK(circle_distance(CircleValue::from_turns(0.25), CircleValue::from_turns(-0.25)) ==
        doctest::Approx(std::numbers::pi));
  Rng rng(14);
  CircleValue acc;
  for (int n = 0; n < 10000; ++n) acc = acc * rng.circle_value();
  CHECK(std::abs(std::abs(acc.value()) - 1.0) < 1e-14);
}
