// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/mickelsson.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "loopext/errors.hpp"
#include "loopext/random.hpp"

namespace loopext {

namespace {

double turns_between(const CircleValue& a, const CircleValue& b) {
  return circle_distance(a, b) / (2.0 * std::numbers::pi);
}

void check_projects_to(const ExtElement& a, const SampledLoop& loop, const char* what, double tolerance) {
  const double d = loop_distance(project(a), loop);
  if (!(d <= tolerance)) {
    std::ostringstream msg;
    msg << "fusion: " << what << " differs from its joined paths by " << d;
    throw Error(ErrorCode::kBoundaryMismatch, msg.str());
  }
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kNotEquivalent: return "not-equivalent";
    case Verdict::kEquivalent: return "equivalent";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

Equivalence equivalent(const ExtElement& a, const ExtElement& b, const ModelOptions& options) {
  Equivalence out;
  if (!a.phi->same_mesh(*b.phi)) {
    out.boundary_distance = std::numeric_limits<double>::infinity();
    out.circle_distance = std::numeric_limits<double>::infinity();
    return out;
  }
  out.boundary_distance = loop_distance(project(a), project(b));
  if (!(out.boundary_distance <= options.boundary_tolerance)) {
    out.circle_distance = std::numeric_limits<double>::infinity();
    return out;
  }
  const SphereMap sphere = glue_sphere(a.phi, b.phi, options.boundary_tolerance);
  out.circle_distance = turns_between(a.z, b.z * wz_action(sphere, options.wz()));
  if (out.circle_distance <= options.circle_tolerance) {
    out.verdict = Verdict::kEquivalent;
  } else if (out.circle_distance <= options.gray_factor * options.circle_tolerance) {
    out.verdict = Verdict::kIndeterminate;
  }
  return out;
}

ExtElement product(const ExtElement& a, const ExtElement& b, const ModelOptions& options) {
  if (!a.phi->same_mesh(*b.phi)) throw Error(ErrorCode::kMeshMismatch, "product: disk meshes differ");
  const double rho = integrate_rho_disk(*a.phi, *b.phi, options.pairing_or_default());
  return {std::make_shared<const DiskMap>(pointwise_product(*a.phi, *b.phi)),
          a.z * b.z * CircleValue::from_turns(-rho)};
}

ExtElement identity_element(const MeshResolution& resolution) {
  return {std::make_shared<const DiskMap>(
              DiskMap::constant(GroupElement::identity(), resolution.radial, resolution.angular)),
          CircleValue::one()};
}

ExtElement inverse(const ExtElement& a, const ModelOptions& options) {
  const ExtElement bare{std::make_shared<const DiskMap>(pointwise_inverse(*a.phi)), CircleValue::one()};
  const ExtElement unit = product(a, bare, options);
  return {bare.phi, unit.z.inverse()};
}

ExtElement scalar_mul(const ExtElement& a, const CircleValue& w) { return {a.phi, a.z * w}; }

SampledLoop project(const ExtElement& a) { return a.phi->boundary(); }

ExtElement fusion(const ExtElement& a12, const ExtElement& a23, const FusionContext& ctx,
                  const ModelOptions& options) {
  check_projects_to(a12, loop_join(ctx[0], ctx[1]), "first factor", options.boundary_tolerance);
  check_projects_to(a23, loop_join(ctx[1], ctx[2]), "second factor", options.boundary_tolerance);
  FillOptions fill = options.fill;
  fill.radial = a12.phi->radial();
  auto phi13 = std::make_shared<const DiskMap>(fill_disk(loop_join(ctx[0], ctx[2]), fill));
  const SphereMap psi = trisect_sphere(a12.phi, a23.phi, phi13, ctx, options.boundary_tolerance);
  return {phi13, a12.z * a23.z * wz_action(psi, options.wz())};
}

ExtElement random_element(std::uint64_t seed, const MeshResolution& resolution, double amplitude) {
  Rng rng(seed, 0x7a);
  return {std::make_shared<const DiskMap>(random_disk(seed, 3, amplitude, resolution.radial, resolution.angular)),
          rng.circle_value()};
}

ExtElement rebuild_filling(const ExtElement& a, std::uint64_t seed, double amplitude, const ModelOptions& options) {
  auto other = std::make_shared<const DiskMap>(perturb_disk(*a.phi, seed, 3, amplitude));
  // a ~ (other, z') iff a.z = z' exp(2 pi i S(a.phi u other)).
  const CircleValue s = wz_action(glue_sphere(a.phi, other), options.wz());
  return {other, a.z * s.inverse()};
}

ExtElement random_element_over(const SampledPath& gi, const SampledPath& gj, std::uint64_t seed,
                               const MeshResolution& resolution, double amplitude) {
  FillOptions fill;
  fill.radial = resolution.radial;
  const DiskMap base = fill_disk(loop_join(gi, gj), fill);
  Rng rng(seed, 0x7b);
  return {std::make_shared<const DiskMap>(perturb_disk(base, seed, 3, amplitude)), rng.circle_value()};
}

}  // namespace loopext
