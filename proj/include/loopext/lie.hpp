// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// SU(2) realized as unit quaternions, its Lie algebra su(2) as R^3, the
// circle group, and the pointwise densities of the Wess-Zumino 3-form H and
// the multiplicative 2-form rho.
//
// Conventions. An algebra element x in R^3 stands for the pure quaternion
// x_1 i + x_2 j + x_3 k, so exp(x) = cos|x| + sin|x| x/|x| and the antipode
// -e sits at |x| = pi. The bracket is the quaternion commutator,
// [x, y] = 2 x cross y. The invariant pairing is <x, y> = kappa * (x . y).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace loopext {

struct AlgElement {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr AlgElement() = default;
  constexpr AlgElement(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr AlgElement operator+(const AlgElement& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr AlgElement operator-(const AlgElement& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr AlgElement operator-() const { return {-x, -y, -z}; }
  constexpr AlgElement operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr AlgElement& operator+=(const AlgElement& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const AlgElement&) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

constexpr AlgElement operator*(double s, const AlgElement& a) { return a * s; }

constexpr double dot(const AlgElement& a, const AlgElement& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr AlgElement cross(const AlgElement& a, const AlgElement& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Lie bracket of su(2) in the quaternion normalization.
constexpr AlgElement bracket(const AlgElement& a, const AlgElement& b) {
  return cross(a, b) * 2.0;
}

/// det[a b c] = a . (b x c)
constexpr double triple(const AlgElement& a, const AlgElement& b, const AlgElement& c) {
  return dot(a, cross(b, c));
}

/// A point of SU(2) stored as a unit quaternion w + xi + yj + zk.
class GroupElement {
 public:
  constexpr GroupElement() = default;

  /// Normalizes the given quaternion. The zero quaternion is rejected.
  static GroupElement from_quaternion(double w, double x, double y, double z);

  /// Stores the components verbatim; the caller guarantees unit norm.
  static constexpr GroupElement from_unit(double w, double x, double y, double z) {
    GroupElement g;
    g.q_ = {w, x, y, z};
    return g;
  }

  static constexpr GroupElement identity() { return {}; }

  constexpr double w() const { return q_[0]; }
  constexpr double x() const { return q_[1]; }
  constexpr double y() const { return q_[2]; }
  constexpr double z() const { return q_[3]; }
  constexpr const std::array<double, 4>& components() const { return q_; }

  /// Exact for unit quaternions: the conjugate.
  constexpr GroupElement inverse() const { return from_unit(q_[0], -q_[1], -q_[2], -q_[3]); }

  constexpr bool operator==(const GroupElement&) const = default;

 private:
  std::array<double, 4> q_{1.0, 0.0, 0.0, 0.0};
};

/// Group product, renormalized to unit norm.
GroupElement group_mul(const GroupElement& a, const GroupElement& b);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return group_mul(a, b); }

GroupElement exp_map(const AlgElement& x);

/// Default rejection radius around -e for log_map.
inline constexpr double kDefaultAntipodeGuard = 1e-6;

/// Principal logarithm, |log g| <= pi. Throws Error(kAntipodalSingularity)
/// when g lies within `guard` radians of -e.
AlgElement log_map(const GroupElement& g, double guard = kDefaultAntipodeGuard);

/// Geodesic distance on the unit 3-sphere (the angle |log(a^-1 b)|).
double angular_distance(const GroupElement& a, const GroupElement& b);

/// Angle from the identity, in [0, pi].
double angle_from_identity(const GroupElement& g);

/// Ad_g(x) = g x g^-1.
AlgElement adjoint(const GroupElement& g, const AlgElement& x);

/// Left-trivialized differential of exp at x applied to y:
/// exp(x)^-1 d/dt exp(x + t y) at t = 0.
AlgElement dexp(const AlgElement& x, const AlgElement& y);

/// Largest absolute component difference; 0 iff bitwise equal up to signed zero.
double component_distance(const GroupElement& a, const GroupElement& b);

/// A point of U(1), stored as a unit complex number.
class CircleValue {
 public:
  CircleValue() = default;
  /// Normalizes; the zero value is rejected.
  explicit CircleValue(std::complex<double> u);

  static CircleValue one() { return CircleValue(); }
  /// exp(2 pi i t)
  static CircleValue from_turns(double turns);

  std::complex<double> value() const { return u_; }
  double re() const { return u_.real(); }
  double im() const { return u_.imag(); }

  /// Argument in turns, in (-1/2, 1/2].
  double turns() const { return std::arg(u_) / (2.0 * std::numbers::pi); }

  CircleValue inverse() const { return from_raw(std::conj(u_)); }
  CircleValue operator*(const CircleValue& o) const { return CircleValue(u_ * o.u_); }
  bool operator==(const CircleValue&) const = default;

  static CircleValue from_raw(std::complex<double> u) {
    CircleValue c;
    c.u_ = u;
    return c;
  }

 private:
  std::complex<double> u_{1.0, 0.0};
};

/// Angle |arg(a / b)| in radians, in [0, pi].
double circle_distance(const CircleValue& a, const CircleValue& b);

/// The scalar kappa in <x, y> = kappa (x . y).
struct PairingConstant {
  double kappa = 1.0;
};

inline double pairing(const PairingConstant& p, const AlgElement& a, const AlgElement& b) {
  return p.kappa * dot(a, b);
}

/// H at any point, on tangents whose left translates to the identity are
/// (a, b, c). With the bracket-wedge normalized so that H and rho satisfy
/// the multiplicativity identity, this is kappa * det[a b c]. The arguments
/// are evaluated in a canonical order and the permutation sign applied, so
/// antisymmetry holds bit for bit.
double h_density(const AlgElement& a, const AlgElement& b, const AlgElement& c, const PairingConstant& p);

/// A tangent vector to G x G, each component left-trivialized:
/// `first` = g1^-1 v, `second` = g2^-1 w.
struct TangentPair {
  AlgElement first;
  AlgElement second;
};

/// rho = 1/2 <pr1* theta ^ pr2* theta_bar> at (g1, g2). The right-invariant
/// form of the second factor is Ad_{g2} of its left-trivialized component.
double rho_density(const GroupElement& g1, const GroupElement& g2, const TangentPair& t1,
                   const TangentPair& t2, const PairingConstant& p);

/// rho given the left-trivialized tangents of the first factor and the
/// right-trivialized tangents of the second.
inline double rho_density_trivialized(const AlgElement& left1_a, const AlgElement& right2_a,
                                      const AlgElement& left1_b, const AlgElement& right2_b,
                                      const PairingConstant& p) {
  return 0.5 * p.kappa * (dot(left1_a, right2_b) - dot(left1_b, right2_a));
}

}  // namespace loopext
