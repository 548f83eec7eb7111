#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "tvpd/bytes.hpp"
#include "tvpd/hashes.hpp"
#include "tvpd/params.hpp"

namespace tvpd {

using Seed = std::array<std::uint8_t, 32>;

/// Fresh seed from the operating system's CSPRNG.
Seed generate_seed();

/// Upper bound on the weak-message counter search.
inline constexpr std::uint32_t kMaxCounterAttempts = 1u << 20;

/// The t secret strings of a HORS-style key, expanded from a 32-byte seed:
/// s_i = first l bits of H(seed || be32(i)) for i = 1..t. element(i) returns
/// s_{i+1}. The material is wiped on destruction.
class SecretKey {
 public:
  SecretKey(SchemeParams params, const Seed& seed);
  ~SecretKey();

  SecretKey(const SecretKey& other);
  SecretKey& operator=(const SecretKey& other);
  SecretKey(SecretKey&& other) noexcept;
  SecretKey& operator=(SecretKey&& other) noexcept;

  const SchemeParams& params() const noexcept { return params_; }
  const Seed& seed() const noexcept { return seed_; }
  std::size_t count() const noexcept { return params_.t; }
  ByteView element(std::size_t i) const;

  /// One-time use is advisory: signing bumps this counter but never refuses.
  std::uint64_t signatures_issued() const noexcept { return issued_.load(std::memory_order_relaxed); }
  void note_signature() const noexcept { issued_.fetch_add(1, std::memory_order_relaxed); }

 private:
  void wipe() noexcept;

  SchemeParams params_;
  Seed seed_{};
  Bytes material_;
  mutable std::atomic<std::uint64_t> issued_{0};
};

struct Signature {
  std::uint32_t ctr = 0;
  std::size_t element_size = 0;
  Bytes elements;  // k elements of element_size bytes, in derivation order

  std::size_t count() const noexcept { return element_size == 0 ? 0 : elements.size() / element_size; }
  ByteView element(std::size_t j) const {
    return ByteView(elements).subspan(j * element_size, element_size);
  }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Splits the leftmost k log2(t) bits of H(message || be32(ctr)) into k
/// big-endian log2(t)-bit integers.
std::vector<std::uint32_t> derive_indices(const SchemeParams& params, ByteView message, std::uint32_t ctr);

/// Smallest counter whose derived indices are pairwise distinct. Throws
/// CounterExhausted after kMaxCounterAttempts tries.
std::uint32_t find_counter(const SchemeParams& params, ByteView message);

bool indices_distinct(std::span<const std::uint32_t> indices, std::uint32_t t);

struct HorsKeyPair {
  SecretKey sk;
  std::vector<Digest> pk;  // v_i = f(s_i)

  const SchemeParams& params() const noexcept { return sk.params(); }
};

HorsKeyPair hors_keygen(const SchemeParams& params, const Seed& seed);

/// Counter-hardened HORS signing. Shared verbatim by the filter-based scheme.
Signature hors_sign(const SecretKey& sk, ByteView message);

inline Signature hors_sign(const HorsKeyPair& kp, ByteView message) { return hors_sign(kp.sk, message); }

bool hors_verify(std::span<const Digest> pk, const SchemeParams& params, ByteView message, const Signature& sig);

}  // namespace tvpd
