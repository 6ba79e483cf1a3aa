// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <string>

#include "brg/limits.hpp"

namespace brg {

std::size_t engine_memory_limit_bytes() {
  std::size_t mb = kDefaultMemoryMb;
  if (const char* env = std::getenv(kMemoryEnvVar)) {
    try {
      const unsigned long long v = std::stoull(env);
      if (v > 0) mb = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return mb * std::size_t{1024} * 1024;
}

}  // namespace brg
