// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "doctest.h"
#include "loopext/errors.hpp"
#include "loopext/serialize.hpp"

using namespace loopext;

namespace {

const MeshResolution kRes{17, 64, 8};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int c = 0; c < 4; ++c) {
      if (!same_bits(a[k].components()[c], b[k].components()[c])) return false;
    }
  }
  return true;
}

bool same_bits(const std::vector<AlgElement>& a, const std::vector<AlgElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!same_bits(a[k].x, b[k].x) || !same_bits(a[k].y, b[k].y) || !same_bits(a[k].z, b[k].z)) return false;
  }
  return true;
}

void check_disk(const DiskMap& a, const DiskMap& b) {
  CHECK(a.same_mesh(b));
  CHECK(same_bits(a.collar_fraction(), b.collar_fraction()));
  CHECK(a.provenance() == b.provenance());
  CHECK(same_bits(a.samples(), b.samples()));
  CHECK(same_bits(a.jets().left_r, b.jets().left_r));
  CHECK(same_bits(a.jets().left_theta, b.jets().left_theta));
  CHECK(same_bits(a.jets().right_r, b.jets().right_r));
  CHECK(same_bits(a.jets().right_theta, b.jets().right_theta));
}

ErrorCode code_of(const std::string& text) {
  try {
    deserialize(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kConfigError;
}

}  // namespace

TEST_CASE("paths and loops round-trip bit-exactly") {
  const SampledPath p = random_path(11, 3, 1.5, 64, 8);
  const Record rp = deserialize(serialize(p));
  REQUIRE(std::holds_alternative<SampledPath>(rp));
  const auto& p2 = std::get<SampledPath>(rp);
  CHECK(p2.collar() == p.collar());
  CHECK(p2.provenance() == p.provenance());
  CHECK(p.provenance().seed == 11);
  CHECK(same_bits(p.samples(), p2.samples()));
  CHECK(std::string(record_kind(rp)) == "path");

  const SampledLoop l = random_loop(12, 4, 2.0, 128);
  const Record rl = deserialize(serialize(l));
  REQUIRE(std::holds_alternative<SampledLoop>(rl));
  CHECK(same_bits(l.samples(), std::get<SampledLoop>(rl).samples()));
  CHECK(std::get<SampledLoop>(rl).provenance() == l.provenance());
  CHECK(serialize(std::get<SampledLoop>(rl)) == serialize(l));
}

TEST_CASE("disks keep samples and jets") {
  const DiskMap d = random_disk(13, 3, 1.5, kRes.radial, kRes.angular);
  const Record r = deserialize(serialize(d));
  REQUIRE(std::holds_alternative<DiskMap>(r));
  check_disk(d, std::get<DiskMap>(r));
  CHECK(serialize(std::get<DiskMap>(r)) == serialize(d));
}

TEST_CASE("elements keep the circle value") {
  const ExtElement a = random_element(14, kRes);
  const Record r = deserialize(serialize(a));
  REQUIRE(std::holds_alternative<ExtElement>(r));
  const auto& b = std::get<ExtElement>(r);
  check_disk(*a.phi, *b.phi);
  CHECK(same_bits(a.z.re(), b.z.re()));
  CHECK(same_bits(a.z.im(), b.z.im()));
  CHECK(std::string(record_kind(r)) == "element");
}

TEST_CASE("awkward doubles survive") {
  // Subnormal, negative zero and values needing all 17 digits.
  const double tiny = std::numeric_limits<double>::denorm_min();
  const double third = 1.0 / 3.0;
  std::vector<GroupElement> s(5, GroupElement::from_unit(std::sqrt(1.0 - third * third), third, -0.0, tiny));
  const SampledLoop l(s);
  const auto back = std::get<SampledLoop>(deserialize(serialize(l)));
  CHECK(same_bits(l.samples(), back.samples()));
  CHECK(std::signbit(back[0].y()));
}

TEST_CASE("malformed input is a format error") {
  const std::string good = serialize(random_loop(1, 2, 1.0, 16));
  CHECK(code_of("") == ErrorCode::kFormatError);
  CHECK(code_of("{not json") == ErrorCode::kFormatError);
  CHECK(code_of("[]") == ErrorCode::kFormatError);
  CHECK(code_of(R"({"format":"loopext-map","version":1,"kind":"torus"})") == ErrorCode::kFormatError);

  std::string v2 = good;
  v2.replace(v2.find("\"version\":1"), 11, "\"version\":2");
  CHECK(code_of(v2) == ErrorCode::kFormatError);

  std::string wrong_size = good;
  wrong_size.replace(wrong_size.find("\"samples\":16"), 12, "\"samples\":17");
  CHECK(code_of(wrong_size) == ErrorCode::kFormatError);

  std::string foreign = good;
  foreign.replace(foreign.find("loopext-map"), 11, "other-tool!");
  CHECK(code_of(foreign) == ErrorCode::kFormatError);

  // A path whose collar is not constant violates its invariants.
  std::string path = serialize(random_path(2, 3, 1.5, 64, 8));
  path.replace(path.find("\"collar\":8"), 10, "\"collar\":9");
  CHECK(code_of(path) == ErrorCode::kFormatError);

  CHECK_THROWS_AS(read_record("/nonexistent/loopext.json"), Error);
}
