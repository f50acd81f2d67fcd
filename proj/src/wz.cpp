// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/wz.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "finite_difference.hpp"
#include "loopext/errors.hpp"
#include "loopext/parallel.hpp"

namespace loopext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double trapezoid_weight(int k, int n) { return (k == 0 || k == n - 1) ? 0.5 : 1.0; }

struct ChartView {
  const BallChart& chart;
  int shells;

  const GroupElement& at(int s, int i, int j) const {
    return chart.samples[(static_cast<std::size_t>(s) * chart.radial + i) * chart.angular + j];
  }
};

// Sum over the nodes of shell k (k >= 1; shell 0 is a point).
double shell_trapezoid(const ChartView& v, int k, const PairingConstant& p) {
  const int S = v.shells, R = v.chart.radial, A = v.chart.angular;
  const double hs = 1.0 / (S - 1), hr = 1.0 / (R - 1), ht = kTwoPi / A;
  const auto idx = [A](int i, int j) { return static_cast<std::size_t>(i) * A + j; };

  std::vector<AlgElement> xr(static_cast<std::size_t>(R) * A), logs;
  for (int j = 0; j < A; ++j) {
    const auto get = [&](int i) -> const GroupElement& { return v.at(k, i, j); };
    detail::forward_logs(get, R, false, logs);
    for (int i = 0; i < R; ++i) xr[idx(i, j)] = detail::derivative_at(get, logs, i, R, hr, false);
  }

  double total = 0.0;
  for (int i = 1; i < R; ++i) {
    const auto get_t = [&](int j) -> const GroupElement& { return v.at(k, i, j); };
    detail::forward_logs(get_t, A, true, logs);
    double row = 0.0;
    for (int j = 0; j < A; ++j) {
      const AlgElement xt = detail::derivative_at(get_t, logs, j, A, ht, true);
      const auto get_s = [&](int s) -> const GroupElement& { return v.at(s, i, j); };
      const AlgElement xs = detail::derivative_direct(get_s, k, S, hs);
      row += h_density(xs, xr[idx(i, j)], xt, p);
    }
    total += trapezoid_weight(i, R) * row;
  }
  return trapezoid_weight(k, S) * total * hs * hr * ht;
}

// Sum over the cells between shells k and k+1.
double slab_midpoint(const ChartView& v, int k, const PairingConstant& p) {
  const int S = v.shells, R = v.chart.radial, A = v.chart.angular;
  const double hs = 1.0 / (S - 1), hr = 1.0 / (R - 1), ht = kTwoPi / A;
  const auto idx = [A](int i, int j) { return static_cast<std::size_t>(i) * A + j; };
  const std::size_t n = static_cast<std::size_t>(R) * A;
  const auto edge = [](const GroupElement& a, const GroupElement& b) { return log_map(group_mul(a.inverse(), b)); };

  std::vector<AlgElement> es(n), er0(n), er1(n), et0(n), et1(n);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < A; ++j) {
      const int j1 = (j + 1) % A;
      es[idx(i, j)] = edge(v.at(k, i, j), v.at(k + 1, i, j));
      et0[idx(i, j)] = edge(v.at(k, i, j), v.at(k, i, j1));
      et1[idx(i, j)] = edge(v.at(k + 1, i, j), v.at(k + 1, i, j1));
      if (i + 1 < R) {
        er0[idx(i, j)] = edge(v.at(k, i, j), v.at(k, i + 1, j));
        er1[idx(i, j)] = edge(v.at(k + 1, i, j), v.at(k + 1, i + 1, j));
      }
    }
  }

  double total = 0.0;
  for (int i = 0; i + 1 < R; ++i) {
    double row = 0.0;
    for (int j = 0; j < A; ++j) {
      const int j1 = (j + 1) % A;
      const GroupElement base_inv = v.at(k, i, j).inverse();
      const auto tr = [&](int s, int ii, int jj, const AlgElement& x) {
        return adjoint(group_mul(base_inv, v.at(s, ii, jj)), x);
      };
      const AlgElement xs = (es[idx(i, j)] + tr(k, i + 1, j, es[idx(i + 1, j)]) + tr(k, i, j1, es[idx(i, j1)]) +
                             tr(k, i + 1, j1, es[idx(i + 1, j1)])) *
                            (0.25 / hs);
      const AlgElement xr = (er0[idx(i, j)] + tr(k, i, j1, er0[idx(i, j1)]) + tr(k + 1, i, j, er1[idx(i, j)]) +
                             tr(k + 1, i, j1, er1[idx(i, j1)])) *
                            (0.25 / hr);
      const AlgElement xt = (et0[idx(i, j)] + tr(k, i + 1, j, et0[idx(i + 1, j)]) + tr(k + 1, i, j, et1[idx(i, j)]) +
                             tr(k + 1, i + 1, j, et1[idx(i + 1, j)])) *
                            (0.25 / ht);
      row += h_density(xs, xr, xt, p);
    }
    total += row;
  }
  return total * hs * hr * ht;
}

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace

const char* to_string(QuadratureScheme scheme) noexcept {
  switch (scheme) {
    case QuadratureScheme::kTrapezoid: return "trapezoid";
    case QuadratureScheme::kMidpoint: return "midpoint";
  }
  return "unknown";
}

void validate(const QuadratureConfig& config) {
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::kConfigError, "quadrature tolerance must be positive");
  if (config.refinement_level < 1) throw Error(ErrorCode::kConfigError, "refinement level must be at least 1");
}

double integrate_rho_disk(const DiskMap& phi1, const DiskMap& phi2, const PairingConstant& pairing) {
  if (!phi1.same_mesh(phi2)) throw Error(ErrorCode::kMeshMismatch, "integrate_rho_disk: meshes differ");
  const int R = phi1.radial(), A = phi1.angular();
  const auto& j1 = phi1.jets();
  const auto& j2 = phi2.jets();
  double total = 0.0;
  for (int i = 0; i < R; ++i) {
    double row = 0.0;
    for (int j = 0; j < A; ++j) {
      const std::size_t k = phi1.index(i, j);
      row += rho_density_trivialized(j1.left_r[k], j2.right_r[k], j1.left_theta[k], j2.right_theta[k], pairing);
    }
    total += trapezoid_weight(i, R) * row;
  }
  return total * phi1.radial_step() * phi1.angular_step();
}

double integrate_rho_disk(const DiskMap& phi1, const DiskMap& phi2) {
  return integrate_rho_disk(phi1, phi2, default_pairing());
}

double integrate_h_ball(const BallMap& ball, const PairingConstant& pairing, QuadratureScheme scheme) {
  const int S = ball.shells;
  const std::size_t nc = ball.charts.size();
  // Trapezoid: slot k is shell k (shell 0 contributes nothing).
  // Midpoint: slot k is the slab between shells k and k+1.
  std::vector<double> partial(nc * static_cast<std::size_t>(S), 0.0);
  parallel_for(partial.size(), [&](std::size_t slot) {
    const std::size_t c = slot / static_cast<std::size_t>(S);
    const int k = static_cast<int>(slot % static_cast<std::size_t>(S));
    const ChartView v{ball.charts[c], S};
    double value = 0.0;
    if (scheme == QuadratureScheme::kTrapezoid) {
      if (k > 0) value = shell_trapezoid(v, k, pairing);
    } else if (k + 1 < S) {
      value = slab_midpoint(v, k, pairing);
    }
    partial[slot] = ball.charts[c].orientation * value;
  });
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

double integrate_h_ball(const BallMap& ball) { return integrate_h_ball(ball, default_pairing()); }

double wz_integral(const SphereMap& sphere, const WzOptions& options) {
  const BallMap ball = extend_to_ball(sphere, options.extension);
  return integrate_h_ball(ball, options.pairing ? *options.pairing : default_pairing(), options.scheme);
}

CircleValue wz_action(const SphereMap& sphere, const WzOptions& options) {
  return CircleValue::from_turns(wz_integral(sphere, options));
}

BallMap calibration_ball(int shells, int radial, int angular, ShellRamp ramp) {
  if (shells < 3 || radial < 3 || angular < 4) throw std::invalid_argument("calibration_ball: mesh too small");
  BallMap ball;
  ball.shells = shells;
  ball.center = GroupElement::identity();
  for (int c = 0; c < 2; ++c) {
    const double zsign = c == 0 ? 1.0 : -1.0;
    BallChart chart;
    chart.orientation = c == 0 ? 1 : -1;
    chart.radial = radial;
    chart.angular = angular;
    chart.samples.resize(static_cast<std::size_t>(shells) * radial * angular);
    for (int s = 0; s < shells; ++s) {
      const double t = static_cast<double>(s) / (shells - 1);
      const double radius = std::numbers::pi * (ramp == ShellRamp::kLinear ? t : smoothstep5(t));
      for (int i = 0; i < radial; ++i) {
        const double chi =
            0.5 * std::numbers::pi * radial_ramp(static_cast<double>(i) / (radial - 1), kDefaultCollarFraction);
        for (int j = 0; j < angular; ++j) {
          const double t = kTwoPi * j / angular;
          const AlgElement n{std::sin(chi) * std::cos(t), std::sin(chi) * std::sin(t), zsign * std::cos(chi)};
          chart.samples[(static_cast<std::size_t>(s) * radial + i) * angular + j] =
              s == 0 ? GroupElement::identity() : exp_map(n * radius);
        }
      }
    }
    ball.charts.push_back(std::move(chart));
  }
  return ball;
}

CalibrationReport calibrate_pairing_report(const QuadratureConfig& config) {
  validate(config);
  CalibrationReport report;
  const PairingConstant unit{1.0};
  const int count = config.refinement_level + 2;
  for (int k = 0; k < count; ++k) {
    const int f = 1 << k;
    const BallMap ball = calibration_ball(8 * f, 16 * f, 32 * f);
    report.levels.push_back({8 * f, 16 * f, 32 * f, integrate_h_ball(ball, unit, config.scheme)});
    if (k > 0) report.extrapolated.push_back(richardson(report.levels[k - 1].integral, report.levels[k].integral));
  }
  const double limit = report.extrapolated.back();
  const double previous = report.extrapolated.size() > 1 ? report.extrapolated[report.extrapolated.size() - 2]
                                                          : report.levels[report.levels.size() - 2].integral;
  const double spread = std::abs(limit - previous) / std::abs(limit);
  if (!(spread <= config.tolerance)) {
    std::ostringstream msg;
    msg << "pairing calibration: successive refinements differ by " << spread << " (relative), tolerance "
        << config.tolerance;
    throw Error(ErrorCode::kNonConvergence, msg.str());
  }
  report.pairing.kappa = 1.0 / limit;
  return report;
}

PairingConstant calibrate_pairing(const QuadratureConfig& config) { return calibrate_pairing_report(config).pairing; }

const PairingConstant& default_pairing() {
  static std::once_flag once;
  static PairingConstant pairing;
  std::call_once(once, [] { pairing = calibrate_pairing(QuadratureConfig{}); });
  return pairing;
}

double rho_cocycle_defect(const GroupElement& g1, const GroupElement& g2, const GroupElement& g3,
                          const std::array<AlgElement, 3>& t, const std::array<AlgElement, 3>& u,
                          const PairingConstant& p) {
  const GroupElement g12 = g1 * g2;
  const GroupElement g23 = g2 * g3;
  const auto first12 = [&](const std::array<AlgElement, 3>& v) { return adjoint(g2.inverse(), v[0]) + v[1]; };
  const auto second23 = [&](const std::array<AlgElement, 3>& v) { return adjoint(g3.inverse(), v[1]) + v[2]; };
  const double a = rho_density(g1, g2, {t[0], t[1]}, {u[0], u[1]}, p);
  const double b = rho_density(g12, g3, {first12(t), t[2]}, {first12(u), u[2]}, p);
  const double c = rho_density(g2, g3, {t[1], t[2]}, {u[1], u[2]}, p);
  const double d = rho_density(g1, g23, {t[0], second23(t)}, {u[0], second23(u)}, p);
  return a + b - c - d;
}

double h_rho_coboundary_residual(const GroupElement& g1, const GroupElement& g2, const std::array<AlgElement, 3>& a,
                                 const std::array<AlgElement, 3>& b, double h, const PairingConstant& p) {
  // Five-point Gauss-Legendre on [-1/2, 1/2].
  static constexpr std::array<double, 5> kNode{0.0, -0.2692346550528415, 0.2692346550528415, -0.4530899229693320,
                                               0.4530899229693320};
  static constexpr std::array<double, 5> kWeight{0.2844444444444444, 0.2393143352496832, 0.2393143352496832,
                                                 0.1184634425231718, 0.1184634425231718};

  const auto rho_at = [&](const std::array<double, 3>& x, int m, int n) {
    AlgElement ua, ub;
    for (int k = 0; k < 3; ++k) {
      ua += a[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
      ub += b[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    }
    const GroupElement f1 = g1 * exp_map(ua);
    const GroupElement f2 = g2 * exp_map(ub);
    const TangentPair tm{dexp(ua, a[static_cast<std::size_t>(m)]), dexp(ub, b[static_cast<std::size_t>(m)])};
    const TangentPair tn{dexp(ua, a[static_cast<std::size_t>(n)]), dexp(ub, b[static_cast<std::size_t>(n)])};
    return rho_density(f1, f2, tm, tn, p);
  };

  // Face x_d = +-h/2 carries the pair (d+1, d+2) with outward sign.
  double boundary = 0.0;
  for (int d = 0; d < 3; ++d) {
    const int m = (d + 1) % 3, n = (d + 2) % 3;
    for (int side = -1; side <= 1; side += 2) {
      double face = 0.0;
      for (std::size_t p1 = 0; p1 < kNode.size(); ++p1) {
        for (std::size_t p2 = 0; p2 < kNode.size(); ++p2) {
          std::array<double, 3> x{};
          x[static_cast<std::size_t>(d)] = 0.5 * side * h;
          x[static_cast<std::size_t>(m)] = kNode[p1] * h;
          x[static_cast<std::size_t>(n)] = kNode[p2] * h;
          face += kWeight[p1] * kWeight[p2] * rho_at(x, m, n);
        }
      }
      boundary += side * face * h * h;
    }
  }
  const double d_rho = boundary / (h * h * h);

  const GroupElement g2_inv = g2.inverse();
  std::array<AlgElement, 3> prod;
  for (std::size_t k = 0; k < 3; ++k) prod[k] = adjoint(g2_inv, a[k]) + b[k];
  const double h12 = h_density(prod[0], prod[1], prod[2], p);
  const double h1 = h_density(a[0], a[1], a[2], p);
  const double h2 = h_density(b[0], b[1], b[2], p);
  return h12 - h1 - h2 + d_rho;
}

}  // namespace loopext
