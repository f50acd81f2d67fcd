// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Quadrature of pulled-back forms: rho over disks, H over balls, the
// Wess-Zumino action of sphere maps, and the calibration of the pairing.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "loopext/lie.hpp"
#include "loopext/mesh.hpp"

namespace loopext {

enum class QuadratureScheme {
  kTrapezoid,  // nodal finite differences, trapezoid weights
  kMidpoint,   // cell-centred differences from averaged edge logs
};

const char* to_string(QuadratureScheme scheme) noexcept;

struct QuadratureConfig {
  int refinement_level = 1;  // calibration uses refinement_level + 2 nested grids
  double tolerance = 1e-4;   // relative agreement of the last two extrapolants
  QuadratureScheme scheme = QuadratureScheme::kTrapezoid;
};

/// Throws Error(kConfigError) unless tolerance > 0 and refinement_level >= 1.
void validate(const QuadratureConfig& config);

/// The pairing calibrated with the default QuadratureConfig. Computed once
/// per process on first use.
const PairingConstant& default_pairing();

/// Integral of (phi1, phi2)* rho over the unit disk from the stored jets,
/// trapezoid in r and uniform in theta. Throws Error(kMeshMismatch).
double integrate_rho_disk(const DiskMap& phi1, const DiskMap& phi2, const PairingConstant& pairing);
double integrate_rho_disk(const DiskMap& phi1, const DiskMap& phi2);

/// Integral of the pullback of H over the ball, summing chart orientations.
/// Partial sums are kept per (chart, shell) and added in a fixed order, so the
/// result does not depend on the worker count.
double integrate_h_ball(const BallMap& ball, const PairingConstant& pairing,
                        QuadratureScheme scheme = QuadratureScheme::kTrapezoid);
double integrate_h_ball(const BallMap& ball);

struct WzOptions {
  ExtensionOptions extension;
  QuadratureScheme scheme = QuadratureScheme::kTrapezoid;
  std::optional<PairingConstant> pairing;  // default_pairing() when empty
};

/// S_WZ of the sphere for the extension chosen by `options`: a real number,
/// meaningful modulo the integers.
double wz_integral(const SphereMap& sphere, const WzOptions& options = {});

/// exp(2 pi i S_WZ).
CircleValue wz_action(const SphereMap& sphere, const WzOptions& options = {});

/// A ball of geodesic spheres exp(pi psi(s) n) about e, with n running over
/// two hemisphere charts. Its image covers SU(2) exactly once.
BallMap calibration_ball(int shells, int radial, int angular, ShellRamp ramp = ShellRamp::kLinear);

struct CalibrationReport {
  struct Level {
    int shells, radial, angular;
    double integral;  // of H with kappa = 1
  };
  std::vector<Level> levels;
  std::vector<double> extrapolated;  // Richardson values, one per level after the first
  PairingConstant pairing;
};

/// Integrates H with unit pairing over calibration balls on nested grids
/// (8, 16, 32) * 2^k, extrapolates, and sets kappa = 1 / limit. Throws
/// Error(kNonConvergence) when the last two extrapolants differ by more than
/// the relative tolerance.
CalibrationReport calibrate_pairing_report(const QuadratureConfig& config);
PairingConstant calibrate_pairing(const QuadratureConfig& config);

/// rho_{g1,g2} + rho_{g1 g2,g3} - rho_{g2,g3} - rho_{g1,g2 g3} on G^3 evaluated
/// on two tangent vectors, each given by left-trivialized components.
double rho_cocycle_defect(const GroupElement& g1, const GroupElement& g2, const GroupElement& g3,
                          const std::array<AlgElement, 3>& t, const std::array<AlgElement, 3>& u,
                          const PairingConstant& pairing);

/// H_{g1 g2} - H_{g1} - H_{g2} + d rho at (g1, g2) on the frame whose
/// left-trivialized components are (a[k], b[k]). d rho is the boundary
/// integral of rho over the cube of side h around the point, divided by its
/// volume; the residual is O(h^2).
double h_rho_coboundary_residual(const GroupElement& g1, const GroupElement& g2,
                                 const std::array<AlgElement, 3>& a, const std::array<AlgElement, 3>& b,
                                 double h, const PairingConstant& pairing);

}  // namespace loopext
