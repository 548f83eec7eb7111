#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "tvpd/bytes.hpp"
#include "tvpd/hashes.hpp"
#include "tvpd/hors.hpp"

namespace test_support {

inline tvpd::Seed counting_seed() {
  tvpd::Seed s{};
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(i);
  return s;
}

inline tvpd::Seed random_seed(std::mt19937_64& rng) {
  tvpd::Seed s{};
  for (auto& b : s) b = static_cast<std::uint8_t>(rng());
  return s;
}

inline tvpd::Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  tvpd::Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline std::string sha256_hex(tvpd::ByteView data) {
  return tvpd::to_hex(tvpd::digest(tvpd::HashAlgo::kSha2_256, data).bytes());
}

}  // namespace test_support
