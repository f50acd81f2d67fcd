// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace loopext {

namespace {
std::atomic<int> g_override{0};

int env_threads() {
  const char* v = std::getenv("LOOPEXT_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    return std::max(0, std::stoi(v));
  } catch (...) {
    return 0;
  }
}
}  // namespace

int thread_count() {
  if (const int o = g_override.load(); o > 0) return o;
  if (const int e = env_threads(); e > 0) return e;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int n) { g_override.store(std::max(0, n)); }

}  // namespace loopext
