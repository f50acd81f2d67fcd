// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// JSON containers for sampled maps and extension elements. Doubles are
// written with shortest round-trip precision, so reading back is bit-exact.

#pragma once

#include <string>
#include <variant>

#include "loopext/mesh.hpp"
#include "loopext/mickelsson.hpp"

namespace loopext {

inline constexpr int kSerializationVersion = 1;

std::string serialize(const SampledPath& p);
std::string serialize(const SampledLoop& l);
std::string serialize(const DiskMap& d);
std::string serialize(const ExtElement& a);

using Record = std::variant<SampledPath, SampledLoop, DiskMap, ExtElement>;

/// Parses any of the containers above. Throws Error(kFormatError) on
/// malformed text, unknown kinds or versions, and data that violates the
/// invariants of the target type.
Record deserialize(const std::string& text);

/// Reads a file and deserializes it. Throws Error(kFormatError) when the file
/// cannot be read.
Record read_record(const std::string& path);

/// "path", "loop", "disk" or "element".
const char* record_kind(const Record& r) noexcept;

}  // namespace loopext
