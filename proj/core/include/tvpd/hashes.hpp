#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "tvpd/bytes.hpp"

namespace tvpd {

/// Closed registry of the hash functions used for the message hash H, the
/// HORS one-way function f and the filter hash h. The numeric values are the
/// on-disk algorithm ids.
enum class HashAlgo : std::uint8_t {
  kSha2_256 = 1,
  kSha2_512 = 2,
  kBlake2s_128 = 3,
  kBlake2s_160 = 4,
  kBlake2b_256 = 5,
  kXxh3_64 = 6,
  kXxh3_128 = 7,
  kCity_256 = 8,
};

inline constexpr std::array<HashAlgo, 8> kAllHashAlgos = {
    HashAlgo::kSha2_256,   HashAlgo::kSha2_512, HashAlgo::kBlake2s_128, HashAlgo::kBlake2s_160,
    HashAlgo::kBlake2b_256, HashAlgo::kXxh3_64,  HashAlgo::kXxh3_128,    HashAlgo::kCity_256,
};

/// Identifier as used in config files and on the command line, e.g. "SHA2-256".
std::string_view algo_name(HashAlgo algo);

/// Throws UnknownAlgorithm for names outside the registry.
HashAlgo parse_algo(std::string_view name);

std::optional<HashAlgo> algo_from_id(std::uint8_t id);

/// Declared output length in bits.
unsigned output_bits(HashAlgo algo);

inline unsigned output_bytes(HashAlgo algo) { return output_bits(algo) / 8; }

/// Fixed-capacity hash output. Never allocates.
class Digest {
 public:
  static constexpr std::size_t kMaxBytes = 64;

  Digest() = default;
  Digest(HashAlgo algo, std::span<const std::uint8_t> bytes);

  HashAlgo algo() const noexcept { return algo_; }
  std::size_t size() const noexcept { return size_; }
  unsigned bit_len() const noexcept { return static_cast<unsigned>(size_) * 8; }
  ByteView bytes() const noexcept { return {data_.data(), size_}; }
  const std::uint8_t* data() const noexcept { return data_.data(); }

  friend bool operator==(const Digest& a, const Digest& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.data_.begin(), a.data_.begin() + a.size_, b.data_.begin());
  }

 private:
  friend Digest digest(HashAlgo, ByteView);
  // Only the first size_ bytes are meaningful; the rest is left uninitialized.
  std::array<std::uint8_t, kMaxBytes> data_;
  std::size_t size_ = 0;
  HashAlgo algo_ = HashAlgo::kSha2_256;
};

/// Hashes `message` with `algo`. Multi-word outputs of the non-cryptographic
/// hashes are emitted in their canonical big-endian byte order.
Digest digest(HashAlgo algo, ByteView message);

/// Writes exactly output_bytes(algo) bytes to `out`.
void digest_into(HashAlgo algo, ByteView message, std::span<std::uint8_t> out);

}  // namespace tvpd
