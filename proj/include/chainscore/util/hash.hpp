#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace chainscore {

// 64-bit FNV-1a. Used for schema fingerprints and manifest content hashes,
// where stability matters and collision resistance against adversaries does
// not.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v);

// FNV-1a over a file's raw bytes, rendered as 16 hex chars.
std::string hash_file(const std::string& path);

}  // namespace chainscore
