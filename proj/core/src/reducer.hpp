#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "tvpd/hashes.hpp"
#include "tvpd/ohbf.hpp"

namespace tvpd::detail {

/// Maps a filter digest, read as a big-endian integer x, to the bit x mod n_j
/// of every partition j. Immutable once built and shared between all filters
/// with the same plan and digest length.
///
/// Two exact strategies:
///  - grouped: the digest is cut into limbs, consecutive partitions are packed
///    into groups whose size product Q_g keeps the weighted limb sum below
///    2^64, one Barrett step gives x mod Q_g, and each partition reduces that
///    32-bit remainder. Valid because every n_j divides its Q_g.
///  - word-wise: x mod n_j from 32-bit words and precomputed 2^(32 w) mod n_j,
///    one partition at a time. Used for digest lengths the groups were not
///    built for.
class Reducer {
 public:
  Reducer(const PartitionPlan& plan, std::size_t digest_bytes);

  /// Cached instance for (plan, digest_bytes).
  static std::shared_ptr<const Reducer> shared(const PartitionPlan& plan, std::size_t digest_bytes);

  std::size_t count() const noexcept { return sizes_.size(); }

  /// Global bit index per partition, out[0..count()).
  void locate(const Digest& d, std::uint64_t* out) const;

  /// True iff all selected bits are set in the MSB-first vector `bits`, which
  /// must be padded to a whole number of 32-bit words.
  bool all_set(const Digest& d, const std::uint8_t* bits) const;

  void set_all(const Digest& d, std::uint8_t* bits) const;

 private:
  static constexpr std::size_t kMaxGroups = 64;
  // Limb counts tried per digest: bytes/4 (32-bit limbs) up to bytes/4 + kExtraLimbs.
  static constexpr std::size_t kExtraLimbs = 4;
  static constexpr std::size_t kMaxWords = Digest::kMaxBytes / 4;
  __extension__ typedef unsigned __int128 u128;
  using GroupFn = void (Reducer::*)(const std::uint8_t* digest, std::uint32_t* out) const;

  void build_groups();
  static GroupFn group_fn_for(std::size_t digest_bytes, std::size_t limbs);
  template <std::size_t Bytes>
  static GroupFn group_fn_row(std::size_t extra);
  bool grouped(const Digest& d) const noexcept { return group_fn_ != nullptr && d.size() == digest_bytes_; }
  template <std::size_t Bytes, std::size_t Limbs>
  void group_remainders(const std::uint8_t* digest, std::uint32_t* out) const;
  std::uint64_t grouped_position(const std::uint32_t* r, std::size_t j) const noexcept;
  void locate_wordwise(const Digest& d, std::uint64_t* out) const;

  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint64_t> offsets_;
  std::size_t digest_bytes_;

  // word-wise: weights_[w * count + j] = 2^(32 w) mod n_j, reciprocals_[j] = ceil(2^128 / n_j)
  std::vector<std::uint32_t> weights_;
  std::vector<u128> reciprocals_;

  // grouped
  std::size_t limb_count_ = 0;
  GroupFn group_fn_ = nullptr;
  std::vector<std::uint64_t> group_moduli_;
  std::vector<std::uint64_t> group_barrett_;  // floor((2^64 - 1) / Q_g)
  std::vector<std::uint64_t> group_weights_;  // [g * limb_count_ + i] = 2^(L i) mod Q_g
  std::vector<std::uint32_t> partition_group_;
  std::vector<std::uint64_t> small_reciprocals_;  // ceil(2^64 / n_j)
};

}  // namespace tvpd::detail
