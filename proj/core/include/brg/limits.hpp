// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace brg {

inline constexpr const char* kMemoryEnvVar = "BRG_ENGINE_MEMORY_MB";
inline constexpr std::size_t kDefaultMemoryMb = 4096;

/// Memory budget in bytes for a single dense engine allocation, read from
/// BRG_ENGINE_MEMORY_MB (megabytes). Invalid values fall back to the default.
std::size_t engine_memory_limit_bytes();

}  // namespace brg
