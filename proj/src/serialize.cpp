// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/serialize.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "loopext/errors.hpp"

namespace loopext {

namespace {

using nlohmann::json;

constexpr const char* kMapFormat = "loopext-map";
constexpr const char* kElementFormat = "loopext-element";

json header(const char* format, const char* kind) {
  return {{"format", format}, {"version", kSerializationVersion}, {"kind", kind}};
}

json provenance_json(const Provenance& p) {
  return {{"source", p.source}, {"seed", p.seed}, {"modes", p.modes}, {"amplitude", p.amplitude}};
}

Provenance provenance_from(const json& j) {
  return {j.at("source").get<std::string>(), j.at("seed").get<std::uint64_t>(), j.at("modes").get<int>(),
          j.at("amplitude").get<double>()};
}

json quaternions(const std::vector<GroupElement>& g) {
  std::vector<double> flat;
  flat.reserve(4 * g.size());
  for (const auto& q : g) flat.insert(flat.end(), q.components().begin(), q.components().end());
  return flat;
}

std::vector<GroupElement> quaternions_from(const json& j, std::size_t expected) {
  const auto flat = j.get<std::vector<double>>();
  if (flat.size() != 4 * expected) throw Error(ErrorCode::kFormatError, "sample array has the wrong length");
  std::vector<GroupElement> g;
  g.reserve(expected);
  for (std::size_t k = 0; k < flat.size(); k += 4) {
    g.push_back(GroupElement::from_unit(flat[k], flat[k + 1], flat[k + 2], flat[k + 3]));
  }
  return g;
}

json vectors(const std::vector<AlgElement>& v) {
  std::vector<double> flat;
  flat.reserve(3 * v.size());
  for (const auto& a : v) {
    flat.push_back(a.x);
    flat.push_back(a.y);
    flat.push_back(a.z);
  }
  return flat;
}

std::vector<AlgElement> vectors_from(const json& j, std::size_t expected) {
  const auto flat = j.get<std::vector<double>>();
  if (flat.size() != 3 * expected) throw Error(ErrorCode::kFormatError, "jet array has the wrong length");
  std::vector<AlgElement> v;
  v.reserve(expected);
  for (std::size_t k = 0; k < flat.size(); k += 3) v.emplace_back(flat[k], flat[k + 1], flat[k + 2]);
  return v;
}

json disk_json(const DiskMap& d) {
  json j = header(kMapFormat, "disk");
  j["dims"] = {{"radial", d.radial()}, {"angular", d.angular()}};
  j["collar"] = d.collar_fraction();
  j["provenance"] = provenance_json(d.provenance());
  j["samples"] = quaternions(d.samples());
  j["jets"] = {{"left_r", vectors(d.jets().left_r)},
               {"left_theta", vectors(d.jets().left_theta)},
               {"right_r", vectors(d.jets().right_r)},
               {"right_theta", vectors(d.jets().right_theta)}};
  return j;
}

void check_header(const json& j, const char* format) {
  if (j.at("format").get<std::string>() != format) throw Error(ErrorCode::kFormatError, "unexpected format tag");
  if (j.at("version").get<int>() != kSerializationVersion) {
    throw Error(ErrorCode::kFormatError, "unsupported serialization version");
  }
}

DiskMap disk_from(const json& j) {
  check_header(j, kMapFormat);
  const int radial = j.at("dims").at("radial").get<int>();
  const int angular = j.at("dims").at("angular").get<int>();
  if (radial <= 0 || angular <= 0) throw Error(ErrorCode::kFormatError, "disk dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular);
  DiskMap::Jets jets;
  const json& jj = j.at("jets");
  jets.left_r = vectors_from(jj.at("left_r"), n);
  jets.left_theta = vectors_from(jj.at("left_theta"), n);
  jets.right_r = vectors_from(jj.at("right_r"), n);
  jets.right_theta = vectors_from(jj.at("right_theta"), n);
  return DiskMap::from_jets(radial, angular, j.at("collar").get<double>(), quaternions_from(j.at("samples"), n),
                            std::move(jets), provenance_from(j.at("provenance")));
}

Record record_from(const json& j) {
  const std::string format = j.at("format").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();
  if (format == kElementFormat) {
    check_header(j, kElementFormat);
    const auto z = j.at("z").get<std::vector<double>>();
    if (z.size() != 2) throw Error(ErrorCode::kFormatError, "z must be a (re, im) pair");
    return ExtElement{std::make_shared<const DiskMap>(disk_from(j.at("disk"))),
                      CircleValue::from_raw({z[0], z[1]})};
  }
  check_header(j, kMapFormat);
  if (kind == "disk") return disk_from(j);
  if (kind == "path") {
    const int segments = j.at("dims").at("segments").get<int>();
    if (segments <= 0) throw Error(ErrorCode::kFormatError, "path needs a positive segment count");
    return SampledPath(quaternions_from(j.at("samples"), static_cast<std::size_t>(segments) + 1),
                       j.at("collar").get<int>(), provenance_from(j.at("provenance")));
  }
  if (kind == "loop") {
    const int samples = j.at("dims").at("samples").get<int>();
    if (samples <= 0) throw Error(ErrorCode::kFormatError, "loop needs a positive sample count");
    return SampledLoop(quaternions_from(j.at("samples"), static_cast<std::size_t>(samples)),
                       provenance_from(j.at("provenance")));
  }
  throw Error(ErrorCode::kFormatError, "unknown record kind '" + kind + "'");
}

}  // namespace

std::string serialize(const SampledPath& p) {
  json j = header(kMapFormat, "path");
  j["dims"] = {{"segments", p.segments()}};
  j["collar"] = p.collar();
  j["provenance"] = provenance_json(p.provenance());
  j["samples"] = quaternions(p.samples());
  return j.dump();
}

std::string serialize(const SampledLoop& l) {
  json j = header(kMapFormat, "loop");
  j["dims"] = {{"samples", l.size()}};
  j["collar"] = 0;
  j["provenance"] = provenance_json(l.provenance());
  j["samples"] = quaternions(l.samples());
  return j.dump();
}

std::string serialize(const DiskMap& d) { return disk_json(d).dump(); }

std::string serialize(const ExtElement& a) {
  json j = header(kElementFormat, "element");
  j["disk"] = disk_json(*a.phi);
  j["z"] = {a.z.re(), a.z.im()};
  return j.dump();
}

Record deserialize(const std::string& text) {
  try {
    return record_from(json::parse(text));
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("malformed record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kFormatError, std::string("record violates its invariants: ") + e.what());
  }
}

Record read_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormatError, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize(text.str());
}

const char* record_kind(const Record& r) noexcept {
  switch (r.index()) {
    case 0: return "path";
    case 1: return "loop";
    case 2: return "disk";
    default: return "element";
  }
}

}  // namespace loopext
