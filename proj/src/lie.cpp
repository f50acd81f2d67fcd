// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/lie.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <sstream>

#include "loopext/errors.hpp"

namespace loopext {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kAntipodalSingularity: return "AntipodalSingularity";
    case ErrorCode::kEndpointMismatch: return "EndpointMismatch";
    case ErrorCode::kBoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::kMeshMismatch: return "MeshMismatch";
    case ErrorCode::kBaseMismatch: return "BaseMismatch";
    case ErrorCode::kMiddleMismatch: return "MiddleMismatch";
    case ErrorCode::kFusionContextMismatch: return "FusionContextMismatch";
    case ErrorCode::kActionConditionViolated: return "ActionConditionViolated";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

GroupElement GroupElement::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("GroupElement: quaternion must be finite and nonzero");
  }
  return from_unit(w / n, x / n, y / n, z / n);
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  const double w = a.w() * b.w() - a.x() * b.x() - a.y() * b.y() - a.z() * b.z();
  const double x = a.w() * b.x() + a.x() * b.w() + a.y() * b.z() - a.z() * b.y();
  const double y = a.w() * b.y() - a.x() * b.z() + a.y() * b.w() + a.z() * b.x();
  const double z = a.w() * b.z() + a.x() * b.y() - a.y() * b.x() + a.z() * b.w();
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  return GroupElement::from_unit(w / n, x / n, y / n, z / n);
}

GroupElement exp_map(const AlgElement& v) {
  const double a = v.norm();
  double sinc;
  if (a < 1e-8) {
    sinc = 1.0 - a * a / 6.0;
  } else {
    sinc = std::sin(a) / a;
  }
  return GroupElement::from_unit(std::cos(a), v.x * sinc, v.y * sinc, v.z * sinc);
}

AlgElement log_map(const GroupElement& g, double guard) {
  const double s = std::sqrt(g.x() * g.x() + g.y() * g.y() + g.z() * g.z());
  const double angle = std::atan2(s, g.w());
  if (std::numbers::pi - angle < guard) {
    std::ostringstream msg;
    msg << "log_map: element at angle " << angle << " lies within " << guard
        << " rad of the antipode of the identity";
    throw Error(ErrorCode::kAntipodalSingularity, msg.str());
  }
  if (s < 1e-12) {
    // angle/s = 1/w + O(s^2) on this branch since angle < pi - guard forces w > 0.
    const double f = 1.0 / g.w();
    return {g.x() * f, g.y() * f, g.z() * f};
  }
  const double f = angle / s;
  return {g.x() * f, g.y() * f, g.z() * f};
}

double angle_from_identity(const GroupElement& g) {
  const double s = std::sqrt(g.x() * g.x() + g.y() * g.y() + g.z() * g.z());
  return std::atan2(s, g.w());
}

double angular_distance(const GroupElement& a, const GroupElement& b) {
  return angle_from_identity(group_mul(a.inverse(), b));
}

AlgElement adjoint(const GroupElement& g, const AlgElement& v) {
  const AlgElement q{g.x(), g.y(), g.z()};
  const AlgElement t = cross(q, v) * 2.0;
  return v + t * g.w() + cross(q, t);
}

AlgElement dexp(const AlgElement& x, const AlgElement& y) {
  const AlgElement w = x * 2.0;
  const double t = w.norm();
  double c1, c2;
  if (t < 1e-4) {
    const double t2 = t * t;
    c1 = 0.5 - t2 / 24.0;
    c2 = 1.0 / 6.0 - t2 / 120.0;
  } else {
    c1 = (1.0 - std::cos(t)) / (t * t);
    c2 = (t - std::sin(t)) / (t * t * t);
  }
  const AlgElement wy = cross(w, y);
  return y - wy * c1 + cross(w, wy) * c2;
}

double component_distance(const GroupElement& a, const GroupElement& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) {
    d = std::max(d, std::abs(a.components()[i] - b.components()[i]));
  }
  return d;
}

CircleValue::CircleValue(std::complex<double> u) {
  const double n = std::abs(u);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("CircleValue: value must be finite and nonzero");
  }
  u_ = u / n;
}

CircleValue CircleValue::from_turns(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return from_raw({std::cos(a), std::sin(a)});
}

double circle_distance(const CircleValue& a, const CircleValue& b) {
  return std::abs(std::arg(a.value() * std::conj(b.value())));
}

double rho_density(const GroupElement& g1, const GroupElement& g2, const TangentPair& t1,
                   const TangentPair& t2, const PairingConstant& p) {
  (void)g1;  // rho is left-invariant in the first factor
  const AlgElement right2_a = adjoint(g2, t1.second);
  const AlgElement right2_b = adjoint(g2, t2.second);
  return rho_density_trivialized(t1.first, right2_a, t2.first, right2_b, p);
}

}  // namespace loopext

namespace loopext {

double h_density(const AlgElement& a, const AlgElement& b, const AlgElement& c, const PairingConstant& p) {
  const auto less = [](const AlgElement* u, const AlgElement* v) {
    if (u->x != v->x) return u->x < v->x;
    if (u->y != v->y) return u->y < v->y;
    return u->z < v->z;
  };
  std::array<const AlgElement*, 3> v{&a, &b, &c};
  double sign = 1.0;
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k + 1 < 3; ++k) {
      if (less(v[k + 1], v[k])) {
        std::swap(v[k], v[k + 1]);
        sign = -sign;
      }
    }
  }
  if (*v[0] == *v[1] || *v[1] == *v[2]) return 0.0;
  return sign * p.kappa * triple(*v[0], *v[1], *v[2]);
}

}  // namespace loopext
