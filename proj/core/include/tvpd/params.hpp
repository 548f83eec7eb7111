#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "tvpd/hashes.hpp"
#include "tvpd/ohbf.hpp"

namespace tvpd {

/// Validity window [t0, t0 + t_delta] in seconds since the epoch, both ends
/// inclusive.
struct TimePolicy {
  std::uint64_t t0 = 0;
  std::uint64_t t_delta = 0;

  bool contains(std::uint64_t now) const noexcept {
    return now >= t0 && now - t0 <= t_delta;
  }
  friend bool operator==(const TimePolicy&, const TimePolicy&) = default;
};

inline constexpr std::uint64_t kDefaultTimeDelta = 3600;

struct SchemeParams {
  int kappa = 0;            // nominal security level; 0 for ad-hoc parameters
  std::uint32_t t = 0;      // number of secret strings, a power of two
  std::uint32_t k = 0;      // strings revealed per signature
  std::uint32_t l = 0;      // secret string length in bits, a multiple of 8
  std::uint32_t p = 0;      // filter partitions
  HashAlgo message_hash = HashAlgo::kSha2_256;  // H
  HashAlgo one_way = HashAlgo::kSha2_256;       // f (HORS public key)
  HashAlgo filter_hash = HashAlgo::kXxh3_64;    // h (OHBF)
  std::optional<PartitionPlan> plan;
  // Request a validity window at key generation. Once a key exists the window
  // itself lives in `time_policy` and is what the sign/verify gate checks.
  bool time_valid = false;
  std::optional<TimePolicy> time_policy;

  unsigned log2_t() const;
  std::size_t element_bytes() const noexcept { return l / 8; }
  unsigned index_bits() const { return k * log2_t(); }

  /// Throws InvalidParams (or InvalidPlan) on any broken invariant.
  void validate() const;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

struct SecurityReport {
  double hors_subset_bits = 0;  // k (log t - log k)
  double trunc_hash_bits = 0;   // min(k log t, |H|) / 2
  double ohbf_hash_bits = 0;    // |h| / 2
  double fpp_bits = 0;          // -log2 fpp
  double kappa = 0;             // minimum of the four
};

/// False-positive probability of a one-hash Bloom filter holding `inserted`
/// elements: (1 - (prod_i exp(-inserted / n_i))^(1/p))^p.
double fpp_eq1(const PartitionPlan& plan, std::uint64_t inserted);

/// -log2 of fpp_eq1, evaluated without underflow.
double fpp_bits(const PartitionPlan& plan, std::uint64_t inserted);

/// p consecutive primes around floor(total_bits_target / p): ceil(p/2) at or
/// below the centre, floor(p/2) above it. Throws InfeasiblePlan when the
/// target is too small.
PartitionPlan plan_partitions(std::uint64_t total_bits_target, std::uint32_t p);

/// Requires params.plan. `inserted` defaults to t.
SecurityReport security_report(const SchemeParams& params, std::optional<std::uint64_t> inserted = {});

enum class HorsFamily { kSha2, kBlake2 };

/// One row of the preset registry.
struct PresetInfo {
  int kappa;
  int variant;
  std::uint32_t t, k, l, p;
  HashAlgo message_hash;
  HashAlgo filter_hash;
  HashAlgo one_way_sha2;
  HashAlgo one_way_blake2;
  std::uint64_t filter_bits_budget;  // total bits handed to plan_partitions
  double reported_pk_kib;            // published filter size, for comparison only
  bool time_valid;
};

std::span<const PresetInfo> preset_table();

/// Throws UnknownPreset for unknown (kappa, variant) pairs.
const PresetInfo& preset_info(int kappa, int variant = 1);

SchemeParams preset(int kappa, int variant = 1, HorsFamily family = HorsFamily::kSha2);

/// Registry row whose (t, k, l, p) and hashes match `params`, if any.
std::optional<PresetInfo> match_preset(const SchemeParams& params);

bool is_prime(std::uint64_t n);

}  // namespace tvpd
