#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace protodsl {

// FIPS 180-4 SHA-256. Self-contained so the shared library carries no crypto
// dependency; digests must be stable across platforms.
std::string sha256_hex(std::string_view data);

}  // namespace protodsl
