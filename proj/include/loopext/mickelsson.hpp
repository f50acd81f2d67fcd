// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Mickelsson's model of the central extension of LSU(2): pairs (phi, z) of a
// disk map and a circle value, modulo
//   (phi, z) ~ (phi', z')  iff  d phi = d phi' and z = z' exp(2 pi i S_WZ(phi u phi')),
// with the Mickelsson product and the fusion product over path triples.

#pragma once

#include <cstdint>
#include <optional>

#include "loopext/lie.hpp"
#include "loopext/mesh.hpp"
#include "loopext/wz.hpp"

namespace loopext {

struct ExtElement {
  DiskPtr phi;
  CircleValue z;

  const DiskMap& disk() const { return *phi; }
};

/// Paths (gamma_1, gamma_2, gamma_3) in G with common endpoints.
using FusionContext = PathTriple;

/// Knobs shared by the model operations.
struct ModelOptions {
  std::optional<PairingConstant> pairing;  // default_pairing() when empty
  double boundary_tolerance = 1e-9;        // for d phi = d phi'
  double circle_tolerance = 1e-3;          // in turns
  double gray_factor = 10.0;               // (tol, gray_factor * tol] is indeterminate
  ExtensionOptions extension;              // balls for S_WZ
  QuadratureScheme scheme = QuadratureScheme::kTrapezoid;
  FillOptions fill;                        // phi_13 in fusion; radial is taken from the inputs

  const PairingConstant& pairing_or_default() const { return pairing ? *pairing : default_pairing(); }
  WzOptions wz() const { return {extension, scheme, pairing_or_default()}; }
};

enum class Verdict { kNotEquivalent, kEquivalent, kIndeterminate };

const char* to_string(Verdict v) noexcept;

struct Equivalence {
  Verdict verdict = Verdict::kNotEquivalent;
  double boundary_distance = 0.0;  // largest componentwise boundary difference
  double circle_distance = 0.0;    // |arg(a.z / (b.z exp(2 pi i S)))| / 2 pi; +inf if boundaries differ

  explicit operator bool() const { return verdict == Verdict::kEquivalent; }
};

/// The relation ~. Boundaries further apart than the boundary tolerance give
/// kNotEquivalent; otherwise the circle distance decides, with the band
/// (tol, gray_factor * tol] reported as kIndeterminate.
Equivalence equivalent(const ExtElement& a, const ExtElement& b, const ModelOptions& options = {});

/// (phi1 phi2, z1 z2 exp(-2 pi i int rho(phi1, phi2))). Throws Error(kMeshMismatch).
ExtElement product(const ExtElement& a, const ExtElement& b, const ModelOptions& options = {});

/// Constant disk at e with z = 1.
ExtElement identity_element(const MeshResolution& resolution = {});

/// Pointwise-inverse disk; z is the inverse of the z-part of
/// product(a, (phi^-1, 1)), so that product(a, inverse(a)) ~ identity.
ExtElement inverse(const ExtElement& a, const ModelOptions& options = {});

ExtElement scalar_mul(const ExtElement& a, const CircleValue& w);

/// The bundle projection: the boundary loop of phi.
SampledLoop project(const ExtElement& a);

/// (phi_13, z12 z23 exp(2 pi i S_WZ(Psi))) with phi_13 = fill_disk(l(gamma_1, gamma_3))
/// and Psi the trisected sphere. Throws Error(kBoundaryMismatch) when the
/// inputs do not project to l(gamma_1, gamma_2) and l(gamma_2, gamma_3).
ExtElement fusion(const ExtElement& a12, const ExtElement& a23, const FusionContext& ctx,
                  const ModelOptions& options = {});

// Random data for property checks.

/// Random disk of the given resolution with a random circle value.
ExtElement random_element(std::uint64_t seed, const MeshResolution& resolution = {}, double amplitude = 1.5);

/// Another representative of the class of `a`: a perturbed filling of the
/// same boundary with z adjusted by the WZ action.
ExtElement rebuild_filling(const ExtElement& a, std::uint64_t seed, double amplitude = 1.0,
                           const ModelOptions& options = {});

/// Element over l(gamma_i, gamma_j): a perturbed geodesic filling with a random z.
ExtElement random_element_over(const SampledPath& gi, const SampledPath& gj, std::uint64_t seed,
                               const MeshResolution& resolution = {}, double amplitude = 1.0);

}  // namespace loopext
