// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "finite_difference.hpp"
#include "loopext/errors.hpp"
#include "loopext/random.hpp"

namespace loopext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool rows_equal(const std::vector<GroupElement>& s, std::size_t a, std::size_t b, int n) {
  for (int j = 0; j < n; ++j) {
    if (!(s[a + static_cast<std::size_t>(j)] == s[b + static_cast<std::size_t>(j)])) return false;
  }
  return true;
}

/// Sup-normalized random field evaluated at given points.
class FourierField {
 public:
  // 1-D: cos/sin series on [0,1] with given base frequency factor.
  static std::vector<AlgElement> curve(Rng& rng, int modes, double frequency, const std::vector<double>& ts) {
    std::vector<AlgElement> a, b;
    for (int m = 0; m <= modes; ++m) {
      a.push_back(rng.normal_vector() * (1.0 / (1.0 + m)));
      b.push_back(m == 0 ? AlgElement{} : rng.normal_vector() * (1.0 / (1.0 + m)));
    }
    std::vector<AlgElement> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      AlgElement v;
      for (int m = 0; m <= modes; ++m) {
        const double arg = frequency * m * ts[k];
        v += a[static_cast<std::size_t>(m)] * std::cos(arg) + b[static_cast<std::size_t>(m)] * std::sin(arg);
      }
      out[k] = v;
    }
    return out;
  }

  // 2-D: plane waves cos(pi/2 (m x + n y) + phase) over a small frequency set.
  static std::vector<AlgElement> plane(Rng& rng, int modes, const std::vector<std::array<double, 2>>& pts) {
    struct Wave {
      double kx, ky, phase;
      AlgElement c;
    };
    std::vector<Wave> waves;
    for (int m = 0; m <= modes; ++m) {
      for (int n = -modes; n <= modes; ++n) {
        if (m + std::abs(n) > modes) continue;
        if (m == 0 && n < 0) continue;
        const double scale = 1.0 / (1.0 + m + std::abs(n));
        waves.push_back({0.5 * std::numbers::pi * m, 0.5 * std::numbers::pi * n, rng.uniform(0.0, kTwoPi),
                         rng.normal_vector() * scale});
      }
    }
    std::vector<AlgElement> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      AlgElement v;
      for (const Wave& w : waves) v += w.c * std::cos(w.kx * pts[k][0] + w.ky * pts[k][1] + w.phase);
      out[k] = v;
    }
    return out;
  }

  static void normalize(std::vector<AlgElement>& v, double amplitude) {
    double sup = 0.0;
    for (const auto& x : v) sup = std::max(sup, x.norm());
    const double f = sup > 0.0 ? amplitude / sup : 0.0;
    for (auto& x : v) x = x * f;
  }
};

void check_amplitude(double amplitude) {
  if (!(amplitude >= 0.0) || amplitude >= std::numbers::pi - kDefaultAntipodeGuard) {
    throw std::invalid_argument("random map amplitude must lie in [0, pi)");
  }
}

double path_ramp(int k, int segments, int collar) {
  const double t = static_cast<double>(k) / segments;
  const double a = static_cast<double>(collar) / segments;
  return smoothstep5((t - a) / (1.0 - 2.0 * a));
}

void check_ring(const SampledLoop& loop, const DiskMap& disk, const char* what, double tolerance) {
  const double d = loop_distance(disk.boundary(), loop);
  if (!(d <= tolerance)) {
    std::ostringstream msg;
    msg << what << ": disk boundary differs from the joined paths by " << d;
    throw Error(ErrorCode::kBoundaryMismatch, msg.str());
  }
}

}  // namespace

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double radial_ramp(double r, double collar_fraction) { return smoothstep5(r / (1.0 - collar_fraction)); }

// ---------------------------------------------------------------------------
// Paths and loops

SampledPath::SampledPath(std::vector<GroupElement> samples, int collar, Provenance provenance)
    : samples_(std::move(samples)), collar_(collar), provenance_(std::move(provenance)) {
  const int n = segments();
  if (n < 1 || collar_ < 0 || n < 4 * collar_) {
    throw std::invalid_argument("SampledPath: need N >= 1 segments and N >= 4 * collar");
  }
  for (int k = 1; k <= collar_; ++k) {
    if (!(samples_[static_cast<std::size_t>(k)] == samples_.front()) ||
        !(samples_[static_cast<std::size_t>(n - k)] == samples_.back())) {
      throw std::invalid_argument("SampledPath: samples must be constant on the collars");
    }
  }
}

SampledPath SampledPath::constant(const GroupElement& g, int segments, int collar) {
  return SampledPath(std::vector<GroupElement>(static_cast<std::size_t>(segments) + 1, g), collar);
}

SampledLoop::SampledLoop(std::vector<GroupElement> samples, Provenance provenance)
    : samples_(std::move(samples)), provenance_(std::move(provenance)) {
  if (samples_.empty()) throw std::invalid_argument("SampledLoop: empty");
}

SampledLoop SampledLoop::constant(const GroupElement& g, int n) {
  return SampledLoop(std::vector<GroupElement>(static_cast<std::size_t>(n), g));
}

const GroupElement& SampledLoop::at(int k) const {
  const int n = size();
  return samples_[static_cast<std::size_t>(((k % n) + n) % n)];
}

SampledLoop SampledLoop::reversed() const {
  std::vector<GroupElement> out(samples_.size());
  for (int k = 0; k < size(); ++k) out[static_cast<std::size_t>(k)] = at(-k);
  return SampledLoop(std::move(out));
}

SampledLoop operator*(const SampledLoop& a, const SampledLoop& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kMeshMismatch, "loop product: sizes differ");
  std::vector<GroupElement> out(a.samples().size());
  for (int k = 0; k < a.size(); ++k) out[static_cast<std::size_t>(k)] = a[k] * b[k];
  return SampledLoop(std::move(out));
}

SampledLoop pointwise_inverse(const SampledLoop& a) {
  std::vector<GroupElement> out(a.samples().size());
  for (int k = 0; k < a.size(); ++k) out[static_cast<std::size_t>(k)] = a[k].inverse();
  return SampledLoop(std::move(out));
}

double loop_distance(const SampledLoop& a, const SampledLoop& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (int k = 0; k < a.size(); ++k) d = std::max(d, component_distance(a[k], b[k]));
  return d;
}

SampledPath operator*(const SampledPath& a, const SampledPath& b) {
  if (a.segments() != b.segments() || a.collar() != b.collar()) {
    throw Error(ErrorCode::kMeshMismatch, "path product: sample counts or collars differ");
  }
  std::vector<GroupElement> out(a.samples().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.samples()[k] * b.samples()[k];
  // The collar samples are products of equal operands, hence equal.
  return SampledPath(std::move(out), a.collar());
}

PathTriple::PathTriple(SampledPath p1, SampledPath p2, SampledPath p3)
    : paths_{std::move(p1), std::move(p2), std::move(p3)} {
  for (int k = 1; k < 3; ++k) {
    const auto& p = paths_[static_cast<std::size_t>(k)];
    if (p.segments() != paths_[0].segments()) {
      throw Error(ErrorCode::kMeshMismatch, "PathTriple: paths have different sample counts");
    }
    if (!(p.front() == paths_[0].front()) || !(p.back() == paths_[0].back())) {
      throw Error(ErrorCode::kEndpointMismatch, "PathTriple: paths must share both endpoints exactly");
    }
  }
}

PathTriple operator*(const PathTriple& a, const PathTriple& b) {
  return PathTriple(a[0] * b[0], a[1] * b[1], a[2] * b[2]);
}

SampledLoop loop_join(const SampledPath& g1, const SampledPath& g2) {
  if (g1.segments() != g2.segments()) {
    throw Error(ErrorCode::kMeshMismatch, "loop_join: paths have different sample counts");
  }
  if (!(g1.front() == g2.front()) || !(g1.back() == g2.back())) {
    throw Error(ErrorCode::kEndpointMismatch, "loop_join: paths do not share both endpoints");
  }
  const int n = g1.segments();
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k <= n; ++k) out.push_back(g1.samples()[static_cast<std::size_t>(k)]);
  for (int k = n - 1; k >= 1; --k) out.push_back(g2.samples()[static_cast<std::size_t>(k)]);
  return SampledLoop(std::move(out));
}

// ---------------------------------------------------------------------------
// Disks

double DiskMap::angular_step() const { return kTwoPi / angular_; }

void DiskMap::validate() const {
  if (radial_ < 3 || angular_ < 4) throw std::invalid_argument("DiskMap: need radial >= 3 and angular >= 4");
  if (!(collar_fraction_ > 0.0 && collar_fraction_ <= 0.5)) {
    throw std::invalid_argument("DiskMap: collar fraction must lie in (0, 1/2]");
  }
  const std::size_t n = static_cast<std::size_t>(radial_) * static_cast<std::size_t>(angular_);
  if (samples_.size() != n || jets_.left_r.size() != n || jets_.left_theta.size() != n ||
      jets_.right_r.size() != n || jets_.right_theta.size() != n) {
    throw std::invalid_argument("DiskMap: array sizes do not match the mesh");
  }
  for (int j = 1; j < angular_; ++j) {
    if (!(at(0, j) == at(0, 0))) throw std::invalid_argument("DiskMap: center samples must coincide");
  }
  const std::size_t rim = index(radial_ - 1, 0);
  for (int i = 0; i < radial_ - 1; ++i) {
    const double r = static_cast<double>(i) / (radial_ - 1);
    if (r > 1.0 - collar_fraction_ + 1e-12 && !rows_equal(samples_, index(i, 0), rim, angular_)) {
      throw std::invalid_argument("DiskMap: map must be radially constant on the collar");
    }
  }
}

DiskMap DiskMap::from_samples(int radial, int angular, double collar_fraction, std::vector<GroupElement> samples,
                              Provenance provenance) {
  if (radial < 3 || angular < 4 ||
      samples.size() != static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular)) {
    throw std::invalid_argument("DiskMap: sample count does not match the mesh");
  }
  const std::size_t n = samples.size();
  Jets jets;
  jets.left_r.resize(n);
  jets.left_theta.resize(n);
  jets.right_r.resize(n);
  jets.right_theta.resize(n);
  const double hr = 1.0 / (radial - 1);
  const double ht = kTwoPi / angular;
  const auto idx = [angular](int i, int j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(angular) + static_cast<std::size_t>(j);
  };

  std::vector<AlgElement> logs;
  for (int i = 0; i < radial; ++i) {
    const auto get = [&](int j) -> const GroupElement& { return samples[idx(i, j)]; };
    detail::forward_logs(get, angular, true, logs);
    for (int j = 0; j < angular; ++j) {
      jets.left_theta[idx(i, j)] = detail::derivative_at(get, logs, j, angular, ht, true);
    }
  }
  for (int j = 0; j < angular; ++j) {
    const auto get = [&](int i) -> const GroupElement& { return samples[idx(i, j)]; };
    detail::forward_logs(get, radial, false, logs);
    for (int i = 0; i < radial; ++i) {
      jets.left_r[idx(i, j)] = detail::derivative_at(get, logs, i, radial, hr, false);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    jets.right_r[k] = adjoint(samples[k], jets.left_r[k]);
    jets.right_theta[k] = adjoint(samples[k], jets.left_theta[k]);
  }
  return from_jets(radial, angular, collar_fraction, std::move(samples), std::move(jets), std::move(provenance));
}

DiskMap DiskMap::from_jets(int radial, int angular, double collar_fraction, std::vector<GroupElement> samples,
                           Jets jets, Provenance provenance) {
  DiskMap d;
  d.radial_ = radial;
  d.angular_ = angular;
  d.collar_fraction_ = collar_fraction;
  d.samples_ = std::move(samples);
  d.jets_ = std::move(jets);
  d.provenance_ = std::move(provenance);
  d.validate();
  return d;
}

DiskMap DiskMap::constant(const GroupElement& g, int radial, int angular, double collar_fraction) {
  const std::size_t n = static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular);
  Jets jets{std::vector<AlgElement>(n), std::vector<AlgElement>(n), std::vector<AlgElement>(n),
            std::vector<AlgElement>(n)};
  return from_jets(radial, angular, collar_fraction, std::vector<GroupElement>(n, g), std::move(jets));
}

SampledLoop DiskMap::boundary() const {
  const auto first = samples_.begin() + static_cast<std::ptrdiff_t>(index(radial_ - 1, 0));
  return SampledLoop(std::vector<GroupElement>(first, first + angular_));
}

DiskMap pointwise_product(const DiskMap& a, const DiskMap& b) {
  if (!a.same_mesh(b)) throw Error(ErrorCode::kMeshMismatch, "disk product: meshes differ");
  const std::size_t n = a.samples().size();
  std::vector<GroupElement> s(n);
  DiskMap::Jets j;
  j.left_r.resize(n);
  j.left_theta.resize(n);
  j.right_r.resize(n);
  j.right_theta.resize(n);
  const auto& ja = a.jets();
  const auto& jb = b.jets();
  for (std::size_t k = 0; k < n; ++k) {
    const GroupElement& ga = a.samples()[k];
    const GroupElement& gb = b.samples()[k];
    s[k] = ga * gb;
    const GroupElement gb_inv = gb.inverse();
    j.left_r[k] = adjoint(gb_inv, ja.left_r[k]) + jb.left_r[k];
    j.left_theta[k] = adjoint(gb_inv, ja.left_theta[k]) + jb.left_theta[k];
    j.right_r[k] = ja.right_r[k] + adjoint(ga, jb.right_r[k]);
    j.right_theta[k] = ja.right_theta[k] + adjoint(ga, jb.right_theta[k]);
  }
  return DiskMap::from_jets(a.radial(), a.angular(), std::min(a.collar_fraction(), b.collar_fraction()),
                            std::move(s), std::move(j));
}

DiskMap pointwise_inverse(const DiskMap& a) {
  const std::size_t n = a.samples().size();
  std::vector<GroupElement> s(n);
  DiskMap::Jets j;
  j.left_r.resize(n);
  j.left_theta.resize(n);
  j.right_r.resize(n);
  j.right_theta.resize(n);
  const auto& ja = a.jets();
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = a.samples()[k].inverse();
    j.left_r[k] = -ja.right_r[k];
    j.left_theta[k] = -ja.right_theta[k];
    j.right_r[k] = -ja.left_r[k];
    j.right_theta[k] = -ja.left_theta[k];
  }
  return DiskMap::from_jets(a.radial(), a.angular(), a.collar_fraction(), std::move(s), std::move(j));
}

// ---------------------------------------------------------------------------
// Spheres

double SphereMap::seam_mismatch() const {
  double d = 0.0;
  for (const Seam& s : seams) {
    const SampledLoop ra = charts[static_cast<std::size_t>(s.chart_a)].disk->boundary();
    const SampledLoop rb = charts[static_cast<std::size_t>(s.chart_b)].disk->boundary();
    for (int k = 0; k < s.count; ++k) {
      d = std::max(d, component_distance(ra.at(s.start_a + s.step_a * k), rb.at(s.start_b + s.step_b * k)));
    }
  }
  return d;
}

SphereMap glue_sphere(DiskPtr north, DiskPtr south, double tolerance) {
  if (!north->same_mesh(*south)) throw Error(ErrorCode::kMeshMismatch, "glue_sphere: meshes differ");
  const double d = loop_distance(north->boundary(), south->boundary());
  if (!(d <= tolerance)) {
    std::ostringstream msg;
    msg << "glue_sphere: boundary loops differ by " << d;
    throw Error(ErrorCode::kBoundaryMismatch, msg.str());
  }
  const int n = north->angular();
  SphereMap s;
  s.charts = {{std::move(north), +1}, {std::move(south), -1}};
  s.seams = {{0, 0, 1, 1, 0, 1, n}};
  return s;
}

SphereMap trisect_sphere(DiskPtr phi12, DiskPtr phi23, DiskPtr phi13, const PathTriple& triple, double tolerance) {
  if (!phi12->same_mesh(*phi23) || !phi12->same_mesh(*phi13)) {
    throw Error(ErrorCode::kMeshMismatch, "trisect_sphere: disk meshes differ");
  }
  check_ring(loop_join(triple[0], triple[1]), *phi12, "trisect_sphere (phi12, p1 p2)", tolerance);
  check_ring(loop_join(triple[1], triple[2]), *phi23, "trisect_sphere (phi23, p2 p3)", tolerance);
  check_ring(loop_join(triple[0], triple[2]), *phi13, "trisect_sphere (phi13, p1 p3)", tolerance);
  const int count = triple[0].segments() + 1;
  SphereMap s;
  s.charts = {{std::move(phi12), -1}, {std::move(phi23), -1}, {std::move(phi13), +1}};
  s.seams = {
      {0, 0, +1, 2, 0, +1, count},  // p1
      {0, 0, -1, 1, 0, +1, count},  // p2
      {1, 0, -1, 2, 0, -1, count},  // p3
  };
  return s;
}

// ---------------------------------------------------------------------------
// Fillings

ContractionCenter choose_contraction_center(std::span<const GroupElement> data, const ContractionOptions& options) {
  const auto clearance_of = [&](const GroupElement& c) {
    double far = 0.0;
    for (const auto& g : data) far = std::max(far, angular_distance(c, g));
    return std::numbers::pi - far;
  };
  ContractionCenter best;
  best.clearance = -1.0;
  for (int k = 0; k <= options.retries; ++k) {
    Rng rng(options.seed, static_cast<std::uint64_t>(k));
    const GroupElement c =
        k == 0 ? exp_map(rng.unit_vector() * options.jitter_angle) : rng.group_element();
    const double cl = clearance_of(c);
    if (cl > best.clearance) best = {c, cl, k};
    if (cl >= options.preferred_clearance) return {c, cl, k};
  }
  if (best.clearance < options.guard) {
    std::ostringstream msg;
    msg << "no contraction center keeps the data " << options.guard << " rad away from its antipode";
    throw Error(ErrorCode::kAntipodalSingularity, msg.str());
  }
  return best;
}

DiskMap fill_disk(const SampledLoop& tau, const FillOptions& options) {
  const int nt = tau.size();
  const int nr = options.radial;
  const auto center = choose_contraction_center(tau.samples(), options.contraction);
  const GroupElement c_inv = center.center.inverse();
  std::vector<AlgElement> v(static_cast<std::size_t>(nt));
  for (int j = 0; j < nt; ++j) v[static_cast<std::size_t>(j)] = log_map(c_inv * tau[j], options.contraction.guard);

  std::vector<GroupElement> s(static_cast<std::size_t>(nr) * static_cast<std::size_t>(nt));
  for (int i = 0; i < nr; ++i) {
    const double ramp = radial_ramp(static_cast<double>(i) / (nr - 1), options.collar_fraction);
    for (int j = 0; j < nt; ++j) {
      GroupElement& out = s[static_cast<std::size_t>(i) * nt + j];
      if (ramp >= 1.0) {
        out = tau[j];
      } else if (ramp <= 0.0) {
        out = center.center;
      } else {
        out = center.center * exp_map(v[static_cast<std::size_t>(j)] * ramp);
      }
    }
  }
  return DiskMap::from_samples(nr, nt, options.collar_fraction, std::move(s),
                               {"fill_disk", options.contraction.seed, center.candidate, center.clearance});
}

BallMap extend_to_ball(const SphereMap& sphere, const ExtensionOptions& options) {
  if (options.shells < 3) throw std::invalid_argument("extend_to_ball: need at least 3 shells");
  std::vector<GroupElement> all;
  for (const auto& ch : sphere.charts) all.insert(all.end(), ch.disk->samples().begin(), ch.disk->samples().end());
  const auto center = choose_contraction_center(all, options.contraction);
  const GroupElement c_inv = center.center.inverse();

  BallMap ball;
  ball.shells = options.shells;
  ball.center = center.center;
  ball.clearance = center.clearance;
  for (const auto& ch : sphere.charts) {
    const DiskMap& d = *ch.disk;
    const std::size_t per_shell = d.samples().size();
    BallChart bc;
    bc.orientation = ch.orientation;
    bc.radial = d.radial();
    bc.angular = d.angular();
    bc.samples.resize(per_shell * static_cast<std::size_t>(options.shells));
    std::vector<AlgElement> v(per_shell);
    for (std::size_t k = 0; k < per_shell; ++k) v[k] = log_map(c_inv * d.samples()[k], options.contraction.guard);
    for (int s = 0; s < options.shells; ++s) {
      const double t = static_cast<double>(s) / (options.shells - 1);
      const double ramp = options.ramp == ShellRamp::kLinear ? t : smoothstep5(t);
      GroupElement* out = bc.samples.data() + per_shell * static_cast<std::size_t>(s);
      for (std::size_t k = 0; k < per_shell; ++k) {
        if (s == options.shells - 1) {
          out[k] = d.samples()[k];
        } else if (s == 0) {
          out[k] = center.center;
        } else {
          out[k] = center.center * exp_map(v[k] * ramp);
        }
      }
    }
    ball.charts.push_back(std::move(bc));
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Random maps

SampledPath random_path(std::uint64_t seed, int modes, double amplitude, int segments, int collar) {
  check_amplitude(amplitude);
  Rng rng(seed, 0x70617468);
  std::vector<double> ts(static_cast<std::size_t>(segments) + 1);
  for (int k = 0; k <= segments; ++k) ts[static_cast<std::size_t>(k)] = path_ramp(k, segments, collar);
  auto x = FourierField::curve(rng, modes, std::numbers::pi, ts);
  FourierField::normalize(x, amplitude);
  std::vector<GroupElement> s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = exp_map(x[k]);
  for (int k = 1; k <= collar; ++k) {
    s[static_cast<std::size_t>(k)] = s.front();
    s[static_cast<std::size_t>(segments - k)] = s.back();
  }
  return SampledPath(std::move(s), collar, {"random_path", seed, modes, amplitude});
}

SampledLoop random_loop(std::uint64_t seed, int modes, double amplitude, int samples) {
  check_amplitude(amplitude);
  Rng rng(seed, 0x6c6f6f70);
  std::vector<double> ts(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) ts[static_cast<std::size_t>(k)] = static_cast<double>(k) / samples;
  auto x = FourierField::curve(rng, modes, kTwoPi, ts);
  FourierField::normalize(x, amplitude);
  std::vector<GroupElement> s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = exp_map(x[k]);
  return SampledLoop(std::move(s), {"random_loop", seed, modes, amplitude});
}

namespace {
std::vector<std::array<double, 2>> disk_points(int radial, int angular, double collar_fraction) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular));
  for (int i = 0; i < radial; ++i) {
    const double rr = radial_ramp(static_cast<double>(i) / (radial - 1), collar_fraction);
    for (int j = 0; j < angular; ++j) {
      const double t = kTwoPi * j / angular;
      pts.push_back({rr * std::cos(t), rr * std::sin(t)});
    }
  }
  return pts;
}

/// Forces exact collar and center rows after pointwise construction.
void enforce_disk_structure(std::vector<GroupElement>& s, int radial, int angular, double collar_fraction) {
  for (int j = 1; j < angular; ++j) s[static_cast<std::size_t>(j)] = s[0];
  const std::size_t rim = static_cast<std::size_t>(radial - 1) * angular;
  for (int i = 1; i < radial - 1; ++i) {
    if (radial_ramp(static_cast<double>(i) / (radial - 1), collar_fraction) >= 1.0) {
      for (int j = 0; j < angular; ++j) s[static_cast<std::size_t>(i) * angular + j] = s[rim + j];
    }
  }
}
}  // namespace

DiskMap random_disk(std::uint64_t seed, int modes, double amplitude, int radial, int angular, double collar_fraction) {
  check_amplitude(amplitude);
  Rng rng(seed, 0x6469736b);
  const auto pts = disk_points(radial, angular, collar_fraction);
  auto x = FourierField::plane(rng, modes, pts);
  FourierField::normalize(x, amplitude);
  std::vector<GroupElement> s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = exp_map(x[k]);
  enforce_disk_structure(s, radial, angular, collar_fraction);
  return DiskMap::from_samples(radial, angular, collar_fraction, std::move(s), {"random_disk", seed, modes, amplitude});
}

std::vector<SampledPath> random_path_family(int count, std::uint64_t seed, int modes, double amplitude,
                                            double bump_amplitude, int segments, int collar) {
  check_amplitude(bump_amplitude);
  const SampledPath base = random_path(seed, modes, amplitude, segments, collar);
  std::vector<double> ts(static_cast<std::size_t>(segments) + 1);
  std::vector<double> weight(ts.size());
  for (int k = 0; k <= segments; ++k) {
    const double r = path_ramp(k, segments, collar);
    ts[static_cast<std::size_t>(k)] = r;
    weight[static_cast<std::size_t>(k)] = 16.0 * r * r * (1.0 - r) * (1.0 - r);
  }
  std::vector<SampledPath> out;
  for (int p = 0; p < count; ++p) {
    Rng rng(seed, 0x62756d70 + static_cast<std::uint64_t>(p));
    auto b = FourierField::curve(rng, modes, std::numbers::pi, ts);
    FourierField::normalize(b, bump_amplitude);
    std::vector<GroupElement> s(ts.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = weight[k] > 0.0 ? base.samples()[k] * exp_map(b[k] * weight[k]) : base.samples()[k];
    }
    for (int k = 0; k <= collar; ++k) {
      s[static_cast<std::size_t>(k)] = base.front();
      s[static_cast<std::size_t>(segments - k)] = base.back();
    }
    out.emplace_back(std::move(s), collar, Provenance{"random_path_family", seed, modes, amplitude});
  }
  return out;
}

PathTriple random_path_triple(std::uint64_t seed, int modes, double amplitude, double bump_amplitude, int segments,
                              int collar) {
  auto f = random_path_family(3, seed, modes, amplitude, bump_amplitude, segments, collar);
  return PathTriple(std::move(f[0]), std::move(f[1]), std::move(f[2]));
}

DiskMap perturb_disk(const DiskMap& phi, std::uint64_t seed, int modes, double amplitude) {
  check_amplitude(amplitude);
  const int nr = phi.radial();
  const int nt = phi.angular();
  Rng rng(seed, 0x70657274);
  const auto pts = disk_points(nr, nt, phi.collar_fraction());
  auto y = FourierField::plane(rng, modes, pts);
  FourierField::normalize(y, amplitude);
  std::vector<GroupElement> s(phi.samples());
  for (int i = 0; i < nr; ++i) {
    const double w = 1.0 - radial_ramp(static_cast<double>(i) / (nr - 1), phi.collar_fraction());
    if (w <= 0.0) continue;
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = phi.index(i, j);
      s[k] = phi.samples()[k] * exp_map(y[k] * w);
    }
  }
  enforce_disk_structure(s, nr, nt, phi.collar_fraction());
  return DiskMap::from_samples(nr, nt, phi.collar_fraction(), std::move(s), {"perturb_disk", seed, modes, amplitude});
}

AnyMap random_map(MapKind kind, std::uint64_t seed, int modes, double amplitude, const MeshResolution& resolution) {
  switch (kind) {
    case MapKind::kPath:
      return random_path(seed, modes, amplitude, resolution.path_segments(), resolution.path_collar());
    case MapKind::kLoop:
      return random_loop(seed, modes, amplitude, resolution.angular);
    case MapKind::kDisk:
      return random_disk(seed, modes, amplitude, resolution.radial, resolution.angular);
  }
  throw std::invalid_argument("random_map: unknown kind");
}

}  // namespace loopext
