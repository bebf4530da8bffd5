#pragma once
// Binary memo files for expensive per-prime solves. Location comes from the
// HYPERLAB_CACHE_DIR environment variable (or an explicit directory); when
// unset, caching is a no-op.
//
// File layout, little-endian: magic "HPL1", version byte 0x01, u64 record
// count, then count records of three i64 values each.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/arith.hpp"

namespace hyperlab::cache {

// Directory from HYPERLAB_CACHE_DIR; nullopt when unset or empty.
std::optional<std::string> env_cache_dir();

// Write rows to <dir>/<name>.hpl via a temp file + rename. Empty dir -> no-op
// returning false.
bool save_triples(const std::string& dir, const std::string& name,
                  const std::vector<std::array<i64, 3>>& rows);

// Read rows back; nullopt when the file is absent, truncated, or has a bad
// header.
std::optional<std::vector<std::array<i64, 3>>> load_triples(const std::string& dir,
                                                            const std::string& name);

}  // namespace hyperlab::cache
