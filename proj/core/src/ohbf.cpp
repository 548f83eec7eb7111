#include "tvpd/ohbf.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "reducer.hpp"
#include "tvpd/counters.hpp"
#include "tvpd/errors.hpp"

namespace tvpd {

PartitionPlan::PartitionPlan(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) throw InvalidPlan("a partition plan needs at least two partitions");
  offsets_.reserve(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    const std::uint32_t n = sizes_[i];
    if (n < 2 || n > kMaxPartitionBits) {
      throw InvalidPlan("partition size " + std::to_string(n) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::gcd(sizes_[j], n) != 1) {
        throw InvalidPlan("partition sizes " + std::to_string(sizes_[j]) + " and " + std::to_string(n) +
                          " are not coprime");
      }
    }
    offsets_.push_back(total_bits_);
    total_bits_ += n;
  }
}

PartitionPlan::PartitionPlan(std::vector<std::uint32_t> sizes, std::uint64_t min_total_bits)
    : PartitionPlan(std::move(sizes)) {
  if (total_bits_ < min_total_bits) {
    throw InvalidPlan("partitions cover " + std::to_string(total_bits_) + " bits, need " +
                      std::to_string(min_total_bits));
  }
}

namespace {

// Storage is rounded up to whole 32-bit words so bit tests may load a word.
std::size_t padded_bytes(const PartitionPlan& plan) { return (plan.total_bytes() + 3) / 4 * 4; }

}  // namespace

OhbfFilter::OhbfFilter(PartitionPlan plan, HashAlgo algo)
    : plan_(std::move(plan)), algo_(algo), bits_(padded_bytes(plan_), 0) {
  if (output_bytes(algo_) % 4 != 0 || output_bytes(algo_) > Digest::kMaxBytes) {
    throw InvalidPlan("filter hash output must be a whole number of 32-bit words");
  }
  reducer_ = detail::Reducer::shared(plan_, output_bytes(algo_));
}

OhbfFilter OhbfFilter::from_packed(PartitionPlan plan, HashAlgo algo, Bytes packed) {
  OhbfFilter filter(std::move(plan), algo);
  if (packed.size() != filter.plan_.total_bytes()) {
    throw InvalidPlan("packed filter has " + std::to_string(packed.size()) + " bytes, plan needs " +
                      std::to_string(filter.plan_.total_bytes()));
  }
  const unsigned tail = static_cast<unsigned>(filter.plan_.total_bits() % 8);
  if (tail != 0 && (packed.back() & (0xFFu >> tail)) != 0) {
    throw InvalidPlan("padding bits of packed filter are not zero");
  }
  packed.resize(filter.bits_.size(), 0);
  filter.bits_ = std::move(packed);
  return filter;
}

std::uint32_t OhbfFilter::reduce(const Digest& d, std::size_t j) const {
  const std::vector<std::uint64_t> pos = positions(d);
  return static_cast<std::uint32_t>(pos.at(j) - plan_.offset(j));
}

std::vector<std::uint64_t> OhbfFilter::positions(const Digest& d) const {
  std::vector<std::uint64_t> pos(plan_.count());
  reducer_->locate(d, pos.data());
  return pos;
}

void OhbfFilter::insert_digest(const Digest& d) {
  op_counters().mod_reductions += plan_.count();
  reducer_->set_all(d, bits_.data());
  ++inserted_;
}

bool OhbfFilter::check_digest(const Digest& d) const {
  op_counters().mod_reductions += plan_.count();
  return reducer_->all_set(d, bits_.data());
}

void OhbfFilter::insert(ByteView element) {
  ++op_counters().filter_hash;
  insert_digest(digest(algo_, element));
}

bool OhbfFilter::check(ByteView element) const {
  ++op_counters().filter_hash;
  return check_digest(digest(algo_, element));
}

bool OhbfFilter::test_bit(std::uint64_t index) const {
  if (index >= plan_.total_bits()) throw std::out_of_range("bit index past end of filter");
  return (bits_[index >> 3] & (0x80u >> (index & 7))) != 0;
}

std::uint64_t OhbfFilter::popcount() const {
  std::uint64_t total = 0;
  for (std::uint8_t b : bits_) total += static_cast<std::uint64_t>(std::popcount(b));
  return total;
}

std::uint64_t OhbfFilter::popcount_partition(std::size_t j) const {
  const std::uint64_t begin = plan_.offset(j);
  const std::uint64_t end = begin + plan_.size(j);
  std::uint64_t total = 0;
  for (std::uint64_t i = begin; i < end; ++i) total += test_bit(i) ? 1 : 0;
  return total;
}

}  // namespace tvpd
