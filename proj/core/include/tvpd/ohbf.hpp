#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "tvpd/bytes.hpp"
#include "tvpd/hashes.hpp"

namespace tvpd {

namespace detail {
class Reducer;
}

/// Sizes of the p pairwise-coprime partitions of a one-hash Bloom filter.
/// Partition j occupies bits [offset(j), offset(j) + size(j)) of the vector.
class PartitionPlan {
 public:
  /// Largest accepted partition. Keeps the weighted digest reduction inside
  /// 64-bit arithmetic for digests of up to 512 bits.
  static constexpr std::uint32_t kMaxPartitionBits = 1u << 27;

  /// Throws InvalidPlan unless there are at least two partitions, every size
  /// is in [2, kMaxPartitionBits] and all sizes are pairwise coprime.
  explicit PartitionPlan(std::vector<std::uint32_t> sizes);

  /// As above, additionally requiring the sizes to cover `min_total_bits`.
  PartitionPlan(std::vector<std::uint32_t> sizes, std::uint64_t min_total_bits);

  std::span<const std::uint32_t> sizes() const noexcept { return sizes_; }
  std::size_t count() const noexcept { return sizes_.size(); }
  std::uint32_t size(std::size_t j) const { return sizes_.at(j); }
  std::uint64_t offset(std::size_t j) const { return offsets_.at(j); }
  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::uint64_t total_bits() const noexcept { return total_bits_; }
  std::size_t total_bytes() const noexcept { return static_cast<std::size_t>((total_bits_ + 7) / 8); }

  friend bool operator==(const PartitionPlan& a, const PartitionPlan& b) noexcept {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_bits_ = 0;
};

/// One-hash Bloom filter: a single call of `algo` per element, reduced modulo
/// every partition size, setting or testing one bit per partition. The bit
/// vector is kept packed MSB-first, which is also its serialized form.
class OhbfFilter {
 public:
  OhbfFilter(PartitionPlan plan, HashAlgo algo);

  /// Rebuilds a filter from a packed bit vector. Throws InvalidPlan if the
  /// length is wrong or padding bits past total_bits() are set.
  static OhbfFilter from_packed(PartitionPlan plan, HashAlgo algo, Bytes packed);

  void insert(ByteView element);
  bool check(ByteView element) const;

  /// Same as insert/check for an element whose h-digest is already known.
  void insert_digest(const Digest& d);
  bool check_digest(const Digest& d) const;

  /// Global bit index selected in each partition for digest `d`.
  std::vector<std::uint64_t> positions(const Digest& d) const;

  /// Value of digest `d` (big-endian integer) modulo partition j's size.
  std::uint32_t reduce(const Digest& d, std::size_t j) const;

  bool test_bit(std::uint64_t index) const;
  std::uint64_t popcount() const;
  std::uint64_t popcount_partition(std::size_t j) const;

  const PartitionPlan& plan() const noexcept { return plan_; }
  HashAlgo algo() const noexcept { return algo_; }
  ByteView packed() const noexcept { return {bits_.data(), plan_.total_bytes()}; }
  std::uint64_t inserted_count() const noexcept { return inserted_; }

  /// Compares plan, hash and bits. inserted_count is diagnostic only.
  friend bool operator==(const OhbfFilter& a, const OhbfFilter& b) noexcept {
    return a.algo_ == b.algo_ && a.plan_ == b.plan_ && a.bits_ == b.bits_;
  }

 private:
  PartitionPlan plan_;
  HashAlgo algo_;
  Bytes bits_;
  std::shared_ptr<const detail::Reducer> reducer_;
  std::uint64_t inserted_ = 0;
};

}  // namespace tvpd
