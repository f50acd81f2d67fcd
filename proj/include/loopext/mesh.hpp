// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Sampled maps into SU(2): paths with sitting instants, loops, polar disk
// maps that are radially constant near the rim, sphere atlases glued from
// disks, and ball maps filling spheres. Plus the constructions the central
// extension model needs: loop join, hemisphere gluing, trisection, disk
// filling and ball extension.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "loopext/lie.hpp"

namespace loopext {

/// Mesh sizes shared by every construction of one run. Joined loops have
/// `angular` samples, so paths have angular/2 segments.
struct MeshResolution {
  int radial = 64;
  int angular = 256;
  int shells = 32;

  int path_segments() const { return angular / 2; }
  int path_collar() const { return path_segments() / 8; }
  bool operator==(const MeshResolution&) const = default;
};

inline constexpr double kDefaultCollarFraction = 0.125;

/// Where a sampled map came from; carried through serialization.
struct Provenance {
  std::string source;  // empty when constructed directly
  std::uint64_t seed = 0;
  int modes = 0;
  double amplitude = 0.0;
  bool operator==(const Provenance&) const = default;
};

/// Quintic smoothstep clamped to [0, 1]; first and second derivatives vanish
/// at both ends.
double smoothstep5(double t);

/// Radial reparametrization of disks: 0 at the center, 1 for r >= 1 - collar.
double radial_ramp(double r, double collar_fraction);

class SampledPath {
 public:
  /// Samples at N+1 uniform parameters of [0, 1]. Requires the first and last
  /// `collar` + 1 samples to be constant and N >= 4 collar.
  SampledPath(std::vector<GroupElement> samples, int collar, Provenance provenance = {});

  static SampledPath constant(const GroupElement& g, int segments, int collar);

  int segments() const { return static_cast<int>(samples_.size()) - 1; }
  int collar() const { return collar_; }
  const std::vector<GroupElement>& samples() const { return samples_; }
  const GroupElement& front() const { return samples_.front(); }
  const GroupElement& back() const { return samples_.back(); }
  const Provenance& provenance() const { return provenance_; }

 private:
  std::vector<GroupElement> samples_;
  int collar_;
  Provenance provenance_;
};

class SampledLoop {
 public:
  SampledLoop() = default;
  explicit SampledLoop(std::vector<GroupElement> samples, Provenance provenance = {});

  static SampledLoop constant(const GroupElement& g, int n);

  int size() const { return static_cast<int>(samples_.size()); }
  const GroupElement& operator[](int k) const { return samples_[static_cast<std::size_t>(k)]; }
  /// Cyclic access.
  const GroupElement& at(int k) const;
  const std::vector<GroupElement>& samples() const { return samples_; }
  const Provenance& provenance() const { return provenance_; }

  /// tau(-t): sample k of the result is sample -k mod n of this loop.
  SampledLoop reversed() const;

 private:
  std::vector<GroupElement> samples_;
  Provenance provenance_;
};

/// Pointwise product and inverse of loops.
SampledLoop operator*(const SampledLoop& a, const SampledLoop& b);
SampledLoop pointwise_inverse(const SampledLoop& a);

/// Largest componentwise difference; +inf when sizes differ.
double loop_distance(const SampledLoop& a, const SampledLoop& b);

/// A map D^2 -> G on the polar grid r_i = i/(radial-1), theta_j = 2 pi j/angular,
/// stored row-major (i outer). Besides the samples it carries the
/// Maurer-Cartan jets: the left-trivialized (g^-1 dg) and right-trivialized
/// (dg g^-1) partial derivatives along r and theta.
class DiskMap {
 public:
  struct Jets {
    std::vector<AlgElement> left_r, left_theta, right_r, right_theta;
  };

  /// Builds the jets by second-order finite differences of the logs of
  /// transitions between neighbouring samples.
  static DiskMap from_samples(int radial, int angular, double collar_fraction,
                              std::vector<GroupElement> samples, Provenance provenance = {});

  /// Takes given jets verbatim (deserialization, pointwise algebra).
  static DiskMap from_jets(int radial, int angular, double collar_fraction,
                           std::vector<GroupElement> samples, Jets jets, Provenance provenance = {});

  static DiskMap constant(const GroupElement& g, int radial, int angular,
                          double collar_fraction = kDefaultCollarFraction);

  int radial() const { return radial_; }
  int angular() const { return angular_; }
  double collar_fraction() const { return collar_fraction_; }
  double radial_step() const { return 1.0 / (radial_ - 1); }
  double angular_step() const;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(angular_) + static_cast<std::size_t>(j);
  }
  const GroupElement& at(int i, int j) const { return samples_[index(i, j)]; }
  const std::vector<GroupElement>& samples() const { return samples_; }
  const Jets& jets() const { return jets_; }
  const Provenance& provenance() const { return provenance_; }

  SampledLoop boundary() const;

  bool same_mesh(const DiskMap& o) const {
    return radial_ == o.radial_ && angular_ == o.angular_;
  }

 private:
  DiskMap() = default;
  void validate() const;

  int radial_ = 0;
  int angular_ = 0;
  double collar_fraction_ = kDefaultCollarFraction;
  std::vector<GroupElement> samples_;
  Jets jets_;
  Provenance provenance_;
};

using DiskPtr = std::shared_ptr<const DiskMap>;

/// Pointwise product; jets follow the Leibniz rule exactly.
/// Throws Error(kMeshMismatch) for different meshes.
DiskMap pointwise_product(const DiskMap& a, const DiskMap& b);

/// Pointwise inverse; left and right jets swap with a sign.
DiskMap pointwise_inverse(const DiskMap& a);

/// Three paths with identical first samples and identical last samples.
class PathTriple {
 public:
  PathTriple(SampledPath p1, SampledPath p2, SampledPath p3);
  const SampledPath& operator[](int k) const { return paths_[static_cast<std::size_t>(k)]; }

 private:
  std::array<SampledPath, 3> paths_;
};

/// Pointwise product of paths sharing sample count and collar.
SampledPath operator*(const SampledPath& a, const SampledPath& b);

/// Pointwise product of triples, used for the fusion multiplicativity law.
PathTriple operator*(const PathTriple& a, const PathTriple& b);

/// The loop that runs along g1 and then back along g2. With N segments the
/// result has 2N samples: g1[0..N] followed by g2[N-1..1].
/// Throws Error(kEndpointMismatch) unless endpoints agree exactly.
SampledLoop loop_join(const SampledPath& g1, const SampledPath& g2);

/// One disk chart of a sphere atlas. Orientation +1 when the polar
/// parametrization (r, theta) preserves the outward orientation of S^2.
struct SphereChart {
  DiskPtr disk;
  int orientation = 1;
};

/// Identifies boundary samples of two charts: ring index start + step k
/// (mod ring size) of chart a meets the same of chart b, k = 0..count-1.
struct Seam {
  int chart_a = 0, start_a = 0, step_a = 1;
  int chart_b = 0, start_b = 0, step_b = 1;
  int count = 0;
};

struct SphereMap {
  std::vector<SphereChart> charts;
  std::vector<Seam> seams;

  /// Largest componentwise disagreement over all seams; 0 for exact seams.
  double seam_mismatch() const;
};

/// Northern chart `north` (orientation-preserving), southern chart `south`
/// (orientation-reversing). Boundaries must agree within `tolerance`.
SphereMap glue_sphere(DiskPtr north, DiskPtr south, double tolerance = 0.0);

/// Sphere cut along three longitudes carrying the three paths; the sectors
/// get phi12 and phi23 orientation-reversing and phi13 orientation-preserving.
/// Requires boundary(phi_ij) = loop_join(p_i, p_j) within `tolerance`.
SphereMap trisect_sphere(DiskPtr phi12, DiskPtr phi23, DiskPtr phi13, const PathTriple& triple,
                         double tolerance = 0.0);

/// How a contraction center is chosen for disk fillings and ball extensions.
/// Candidate 0 is exp(jitter_angle * u) for a seeded random unit vector u;
/// later candidates are seeded Haar-random points. The first candidate whose
/// antipode stays `preferred_clearance` away from the data wins; otherwise the
/// best candidate beyond `guard`; otherwise AntipodalSingularity.
struct ContractionOptions {
  std::uint64_t seed = 0;
  double jitter_angle = 0.0;
  double preferred_clearance = 0.35;
  double guard = kDefaultAntipodeGuard;
  int retries = 24;
};

struct ContractionCenter {
  GroupElement center;
  double clearance = 0.0;  // distance from the data to -center
  int candidate = 0;
};

ContractionCenter choose_contraction_center(std::span<const GroupElement> data,
                                            const ContractionOptions& options);

struct FillOptions {
  int radial = 64;
  double collar_fraction = kDefaultCollarFraction;
  ContractionOptions contraction;
};

/// Disk bounded by `tau`: geodesic contraction toward a chosen center,
/// grid(r, theta) = c exp(ramp(r) log(c^-1 tau(theta))).
DiskMap fill_disk(const SampledLoop& tau, const FillOptions& options = {});

/// One chart of a ball map: shells[s] is the chart's disk grid at radius s.
struct BallChart {
  int orientation = 1;
  int radial = 0;
  int angular = 0;
  std::vector<GroupElement> samples;  // [shell][r][theta]
};

/// A map D^3 -> G given on the cone over a sphere atlas: shell s in [0, 1]
/// holds one grid per chart; shell 0 is the contraction center, the last
/// shell the boundary sphere.
struct BallMap {
  int shells = 0;
  std::vector<BallChart> charts;
  GroupElement center;
  double clearance = 0.0;

  const GroupElement& at(int chart, int shell, int i, int j) const {
    const BallChart& c = charts[static_cast<std::size_t>(chart)];
    return c.samples[(static_cast<std::size_t>(shell) * c.radial + i) * c.angular + j];
  }
};

/// Radial profile of ball extensions along the shell parameter.
enum class ShellRamp {
  kLinear,   // constant-speed geodesics; their transition logs are exact
  kQuintic,  // smoothstep5, flat at both ends
};

struct ExtensionOptions {
  int shells = 32;
  ShellRamp ramp = ShellRamp::kLinear;
  ContractionOptions contraction;
};

/// Geodesic cone from a chosen center with the smooth ramp in the radial
/// parameter; the last shell copies the sphere samples exactly.
BallMap extend_to_ball(const SphereMap& sphere, const ExtensionOptions& options = {});

// Test-case generation. Everything below is deterministic in the seed.

enum class MapKind { kPath, kLoop, kDisk };

/// Path exp(X(ramp(t))) with X a truncated Fourier series in su(2) scaled so
/// that max |X| = amplitude. Requires 0 <= amplitude < pi.
SampledPath random_path(std::uint64_t seed, int modes, double amplitude, int segments, int collar);
SampledLoop random_loop(std::uint64_t seed, int modes, double amplitude, int samples);
DiskMap random_disk(std::uint64_t seed, int modes, double amplitude, int radial, int angular,
                    double collar_fraction = kDefaultCollarFraction);

/// `count` paths sharing both endpoints: a random base path times seeded bumps
/// that vanish on the collars.
std::vector<SampledPath> random_path_family(int count, std::uint64_t seed, int modes, double amplitude,
                                            double bump_amplitude, int segments, int collar);

PathTriple random_path_triple(std::uint64_t seed, int modes, double amplitude, double bump_amplitude,
                              int segments, int collar);

/// phi * exp(w(r) Y) with Y random of size `amplitude` and w vanishing on the
/// collar: another disk with the same boundary.
DiskMap perturb_disk(const DiskMap& phi, std::uint64_t seed, int modes, double amplitude);

using AnyMap = std::variant<SampledPath, SampledLoop, DiskMap>;

/// Dispatches to the generators above with sizes taken from `resolution`.
AnyMap random_map(MapKind kind, std::uint64_t seed, int modes, double amplitude,
                  const MeshResolution& resolution = {});

}  // namespace loopext
