// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "loopext/errors.hpp"
#include "loopext/mesh.hpp"
#include "loopext/random.hpp"

using namespace loopext;

namespace {

constexpr double kPi = std::numbers::pi;

// Analytic disk g(r, theta) = exp(f) with f = R(r) (A cos theta + B sin theta + C).
struct AnalyticDisk {
  AlgElement a{0.4, -0.1, 0.2}, b{0.1, 0.5, -0.3}, c{-0.2, 0.1, 0.3};
  double eps = kDefaultCollarFraction;

  AlgElement f(double r, double t) const {
    return (a * std::cos(t) + b * std::sin(t) + c) * radial_ramp(r, eps);
  }
  double ramp_derivative(double r) const {
    const double s = r / (1.0 - eps);
    if (s >= 1.0) return 0.0;
    return 30.0 * s * s * (1.0 - s) * (1.0 - s) / (1.0 - eps);
  }
  AlgElement f_r(double r, double t) const { return (a * std::cos(t) + b * std::sin(t) + c) * ramp_derivative(r); }
  AlgElement f_t(double r, double t) const { return (b * std::cos(t) - a * std::sin(t)) * radial_ramp(r, eps); }

  DiskMap sample(int radial, int angular) const {
    std::vector<GroupElement> s;
    for (int i = 0; i < radial; ++i) {
      for (int j = 0; j < angular; ++j) s.push_back(exp_map(f(double(i) / (radial - 1), 2 * kPi * j / angular)));
    }
    return DiskMap::from_samples(radial, angular, eps, std::move(s));
  }

  // Largest error of the left r-jet and theta-jet against dexp.
  double jet_error(const DiskMap& d) const {
    double err = 0.0;
    for (int i = 0; i < d.radial(); ++i) {
      for (int j = 0; j < d.angular(); ++j) {
        const double r = double(i) / (d.radial() - 1), t = 2 * kPi * j / d.angular();
        const auto& jets = d.jets();
        const std::size_t k = d.index(i, j);
        err = std::max(err, (jets.left_r[k] - dexp(f(r, t), f_r(r, t))).norm());
        err = std::max(err, (jets.left_theta[k] - dexp(f(r, t), f_t(r, t))).norm());
        err = std::max(err, (jets.right_r[k] - adjoint(d.samples()[k], jets.left_r[k])).norm());
      }
    }
    return err;
  }
};

SampledPath path_from(std::vector<GroupElement> s, int collar) { return SampledPath(std::move(s), collar); }

}  // namespace

TEST_CASE("SampledPath enforces collars") {
  std::vector<GroupElement> s(17);
  s[8] = exp_map({0.1, 0, 0});
  CHECK_NOTHROW(path_from(s, 2));
  s[1] = exp_map({0.1, 0, 0});
  CHECK_THROWS_AS(path_from(s, 2), std::invalid_argument);
  CHECK_THROWS_AS(path_from(std::vector<GroupElement>(9), 3), std::invalid_argument);
}

TEST_CASE("loop_join index bookkeeping") {
  const auto fam = random_path_family(2, 5, 3, 0.8, 0.4, 32, 4);
  const SampledLoop l = loop_join(fam[0], fam[1]);
  REQUIRE(l.size() == 64);
  for (int k = 0; k <= 32; ++k) CHECK(l[k] == fam[0].samples()[static_cast<std::size_t>(k)]);
  for (int k = 33; k < 64; ++k) CHECK(l[k] == fam[1].samples()[static_cast<std::size_t>(64 - k)]);
}

TEST_CASE("loop_join of reversed arguments is the reversed loop") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fam = random_path_family(2, seed, 3, 1.0, 0.5, 64, 8);
    CHECK(loop_distance(loop_join(fam[0], fam[1]).reversed(), loop_join(fam[1], fam[0])) == 0.0);
  }
}

TEST_CASE("loop_join degenerate cases and errors") {
  const auto e = SampledPath::constant(GroupElement::identity(), 16, 2);
  CHECK(loop_distance(loop_join(e, e), SampledLoop::constant(GroupElement::identity(), 32)) == 0.0);
  const auto g = random_path(3, 3, 1.0, 16, 2);
  const SampledLoop gg = loop_join(g, g);
  for (int k = 1; k < 16; ++k) CHECK(gg.at(k) == gg.at(-k));
  try {
    loop_join(g, e);
    FAIL("expected EndpointMismatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kEndpointMismatch);
  }
  CHECK_THROWS_AS(loop_join(g, random_path(3, 3, 1.0, 24, 2)), Error);
}

TEST_CASE("disk jets are second-order accurate") {
  const AnalyticDisk disk;
  const double e1 = disk.jet_error(disk.sample(33, 64));
  const double e2 = disk.jet_error(disk.sample(65, 128));
  CHECK(e1 < 2e-2);
  CHECK(std::log2(e1 / e2) > 1.8);
}

TEST_CASE("pointwise product jets follow the Leibniz rule") {
  const DiskMap a = random_disk(1, 3, 1.0, 65, 128);
  const DiskMap b = random_disk(2, 3, 1.0, 65, 128);
  const DiskMap ab = pointwise_product(a, b);
  const DiskMap fd = DiskMap::from_samples(65, 128, ab.collar_fraction(), ab.samples());
  double err = 0.0;
  for (std::size_t k = 0; k < ab.samples().size(); ++k) {
    err = std::max(err, (ab.jets().left_r[k] - fd.jets().left_r[k]).norm());
    err = std::max(err, (ab.jets().left_theta[k] - fd.jets().left_theta[k]).norm());
    err = std::max(err, (ab.jets().right_theta[k] - fd.jets().right_theta[k]).norm());
  }
  CHECK(err < 5e-2);
  CHECK(loop_distance(ab.boundary(), a.boundary() * b.boundary()) == 0.0);
  CHECK_THROWS_AS(pointwise_product(a, random_disk(2, 3, 1.0, 33, 128)), Error);
}

TEST_CASE("double inversion is bit-exact") {
  const DiskMap a = random_disk(4, 3, 1.2, 17, 32);
  const DiskMap b = pointwise_inverse(pointwise_inverse(a));
  CHECK(b.samples() == a.samples());
  CHECK(b.jets().left_r == a.jets().left_r);
  CHECK(b.jets().right_theta == a.jets().right_theta);
}

TEST_CASE("random_disk satisfies the collar invariant and is deterministic") {
  const DiskMap d = random_disk(7, 4, 1.5, 33, 64);
  const int rim = d.radial() - 1;
  for (int i = 0; i < d.radial(); ++i) {
    if (double(i) / rim <= 1.0 - d.collar_fraction()) continue;
    for (int j = 0; j < d.angular(); ++j) CHECK(d.at(i, j) == d.at(rim, j));
  }
  const DiskMap d2 = random_disk(7, 4, 1.5, 33, 64);
  CHECK(d2.samples() == d.samples());
  CHECK(d2.jets().left_r == d.jets().left_r);
}

TEST_CASE("random_map: determinism and zero amplitude") {
  const auto l1 = std::get<SampledLoop>(random_map(MapKind::kLoop, 42, 3, 0.5));
  const auto l2 = std::get<SampledLoop>(random_map(MapKind::kLoop, 42, 3, 0.5));
  CHECK(l1.samples() == l2.samples());
  const auto p = std::get<SampledPath>(random_map(MapKind::kPath, 1, 3, 0.0));
  for (const auto& g : p.samples()) CHECK(g == GroupElement::identity());
  const auto d = std::get<DiskMap>(random_map(MapKind::kDisk, 1, 3, 0.0, {17, 32, 8}));
  for (const auto& g : d.samples()) CHECK(g == GroupElement::identity());
  CHECK_THROWS_AS(random_map(MapKind::kLoop, 1, 3, kPi), std::invalid_argument);
}

TEST_CASE("glue_sphere seams and boundary check") {
  auto a = std::make_shared<const DiskMap>(random_disk(3, 3, 1.0, 17, 32));
  auto b = std::make_shared<const DiskMap>(perturb_disk(*a, 9, 3, 0.7));
  const SphereMap s = glue_sphere(a, b);
  CHECK(s.seam_mismatch() == 0.0);
  CHECK(s.charts[0].orientation == 1);
  CHECK(s.charts[1].orientation == -1);
  auto c = std::make_shared<const DiskMap>(random_disk(4, 3, 1.0, 17, 32));
  try {
    glue_sphere(a, c);
    FAIL("expected BoundaryMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBoundaryMismatch);
  }
}

TEST_CASE("trisect_sphere seams carry the three paths") {
  const PathTriple t = random_path_triple(11, 3, 1.0, 0.5, 32, 4);
  FillOptions fo;
  fo.radial = 17;
  auto p12 = std::make_shared<const DiskMap>(fill_disk(loop_join(t[0], t[1]), fo));
  auto p23 = std::make_shared<const DiskMap>(fill_disk(loop_join(t[1], t[2]), fo));
  auto p13 = std::make_shared<const DiskMap>(fill_disk(loop_join(t[0], t[2]), fo));
  const SphereMap s = trisect_sphere(p12, p23, p13, t);
  CHECK(s.seam_mismatch() == 0.0);
  REQUIRE(s.seams.size() == 3);
  // Seam k runs along path k.
  for (int k = 0; k <= 32; ++k) {
    const auto& seam = s.seams[0];
    CHECK(s.charts[0].disk->boundary().at(seam.start_a + seam.step_a * k) == t[0].samples()[std::size_t(k)]);
    const auto& seam2 = s.seams[1];
    CHECK(s.charts[1].disk->boundary().at(seam2.start_b + seam2.step_b * k) == t[1].samples()[std::size_t(k)]);
    const auto& seam3 = s.seams[2];
    CHECK(s.charts[2].disk->boundary().at(seam3.start_b + seam3.step_b * k) == t[2].samples()[std::size_t(k)]);
  }
  try {
    trisect_sphere(p12, p13, p13, t);
    FAIL("expected BoundaryMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBoundaryMismatch);
    CHECK(std::string(e.what()).find("phi23") != std::string::npos);
  }
}

TEST_CASE("fill_disk reproduces its boundary") {
  const SampledLoop tau = random_loop(5, 4, 2.0, 64);
  const DiskMap d = fill_disk(tau, {17, kDefaultCollarFraction, {}});
  CHECK(loop_distance(d.boundary(), tau) == 0.0);
  const DiskMap e = fill_disk(SampledLoop::constant(GroupElement::identity(), 32), {17, kDefaultCollarFraction, {}});
  for (const auto& g : e.samples()) CHECK(g == GroupElement::identity());
}

TEST_CASE("contraction center avoids the antipode") {
  // A loop through -e: the default center e is useless.
  std::vector<GroupElement> s;
  for (int j = 0; j < 64; ++j) s.push_back(exp_map({kPi * std::sin(2 * kPi * j / 64), 0.3, 0.0}));
  s.push_back(GroupElement::from_unit(-1, 0, 0, 0));
  const auto c = choose_contraction_center(s, {});
  CHECK(c.candidate > 0);
  CHECK(c.clearance >= 0.35);
  const DiskMap d = fill_disk(SampledLoop(std::vector<GroupElement>(s.begin(), s.end() - 1)), {17, 0.125, {}});
  CHECK(d.provenance().modes > 0);

  // Dense data leaves no center with large clearance.
  Rng rng(3);
  std::vector<GroupElement> cloud;
  for (int n = 0; n < 4000; ++n) cloud.push_back(rng.group_element());
  ContractionOptions strict;
  strict.preferred_clearance = 2.0;
  strict.guard = 1.0;
  try {
    choose_contraction_center(cloud, strict);
    FAIL("expected AntipodalSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAntipodalSingularity);
  }
}

TEST_CASE("extend_to_ball: boundary shell and center") {
  auto a = std::make_shared<const DiskMap>(random_disk(3, 3, 1.0, 17, 32));
  auto b = std::make_shared<const DiskMap>(perturb_disk(*a, 9, 3, 0.7));
  const SphereMap s = glue_sphere(a, b);
  const BallMap ball = extend_to_ball(s, {8, {}});
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 17; ++i) {
      for (int j = 0; j < 32; ++j) {
        CHECK(ball.at(c, 7, i, j) == s.charts[std::size_t(c)].disk->at(i, j));
        CHECK(ball.at(c, 0, i, j) == ball.center);
      }
    }
  }
  const auto e = std::make_shared<const DiskMap>(DiskMap::constant(GroupElement::identity(), 9, 16));
  const BallMap flat = extend_to_ball(glue_sphere(e, e), {4, {}});
  for (const auto& ch : flat.charts)
    for (const auto& g : ch.samples) CHECK(g == GroupElement::identity());
}
