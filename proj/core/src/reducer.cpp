#include "reducer.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>

#include "tvpd/bytes.hpp"

namespace tvpd::detail {

namespace {

__extension__ typedef unsigned __int128 u128;

// Remainder by direct computation (Lemire, Kaser, Kurz 2019): with
// m = ceil(2^128 / n), a mod n is the high 64 bits of (m * a mod 2^128) * n.
// Exact for every 64-bit a and n.
inline std::uint64_t fastmod(std::uint64_t a, u128 m, std::uint64_t n) {
  const u128 low = m * a;
  const u128 bottom = (static_cast<u128>(static_cast<std::uint64_t>(low)) * n) >> 64;
  const u128 top = static_cast<u128>(static_cast<std::uint64_t>(low >> 64)) * n;
  return static_cast<std::uint64_t>((bottom + top) >> 64);
}

// Same idea for 32-bit a with m = ceil(2^64 / n).
inline std::uint32_t fastmod32(std::uint32_t a, std::uint64_t m, std::uint32_t n) {
  return static_cast<std::uint32_t>((static_cast<u128>(m * a) * n) >> 64);
}

// `bits` is padded to whole 32-bit words. On little-endian hosts bit pos of
// the MSB-first vector is bit (pos ^ 7) mod 32 of its 32-bit word.
inline bool bit_at(const std::uint8_t* bits, std::uint64_t pos) {
  if constexpr (std::endian::native == std::endian::little) {
    std::uint32_t word;
    std::memcpy(&word, bits + (pos >> 5) * 4, 4);
    return (word >> ((pos ^ 7) & 31)) & 1u;
  } else {
    return (bits[pos >> 3] >> (7 - (pos & 7))) & 1u;
  }
}

inline void set_bit(std::uint8_t* bits, std::uint64_t pos) {
  bits[pos >> 3] |= static_cast<std::uint8_t>(0x80u >> (pos & 7));
}

}  // namespace

Reducer::Reducer(const PartitionPlan& plan, std::size_t digest_bytes)
    : sizes_(plan.sizes().begin(), plan.sizes().end()),
      offsets_(plan.offsets().begin(), plan.offsets().end()),
      digest_bytes_(digest_bytes) {
  const std::size_t p = sizes_.size();
  weights_.resize(p * kMaxWords);
  reciprocals_.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    const std::uint64_t n = sizes_[j];
    reciprocals_[j] = ~static_cast<u128>(0) / n + 1;
    const std::uint64_t word_weight = (std::uint64_t{1} << 32) % n;
    std::uint64_t w = 1 % n;
    for (std::size_t k = 0; k < kMaxWords; ++k) {
      weights_[k * p + j] = static_cast<std::uint32_t>(w);
      w = (w * word_weight) % n;
    }
  }
  build_groups();
}

std::shared_ptr<const Reducer> Reducer::shared(const PartitionPlan& plan, std::size_t digest_bytes) {
  using Key = std::pair<std::vector<std::uint32_t>, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Reducer>> cache;
  constexpr std::size_t kCacheLimit = 64;

  Key key{{plan.sizes().begin(), plan.sizes().end()}, digest_bytes};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= kCacheLimit) {
    std::erase_if(cache, [](const auto& entry) { return entry.second.use_count() == 1; });
  }
  auto reducer = std::make_shared<const Reducer>(plan, digest_bytes);
  if (cache.size() < kCacheLimit) cache.emplace(std::move(key), reducer);
  return reducer;
}

void Reducer::build_groups() {
  const std::size_t p = sizes_.size();
  if (digest_bytes_ == 0 || digest_bytes_ % 8 != 0 || digest_bytes_ > Digest::kMaxBytes) return;
  const std::size_t bits = digest_bytes_ * 8;

  // Rough instruction counts: two per limb and group for the weighted sum, ten
  // per group for the Barrett step, three per limb to cut it out of the digest.
  std::size_t best_cost = ~std::size_t{0};
  for (std::size_t limbs = digest_bytes_ / 4; limbs <= digest_bytes_ / 4 + kExtraLimbs; ++limbs) {
    const std::size_t limb_bits = (bits + limbs - 1) / limbs;
    // limbs * (2^L - 1) * (Q - 1) must not exceed 2^64 - 1, and remainders
    // below Q must fit in 32 bits.
    const std::uint64_t limb_max = (std::uint64_t{1} << limb_bits) - 1;
    const std::uint64_t bound =
        std::min<std::uint64_t>(std::uint64_t{1} << 32, ~std::uint64_t{0} / (limbs * limb_max) + 1);
    std::vector<std::uint64_t> moduli;
    std::vector<std::uint32_t> group_of;
    bool fits = true;
    for (std::size_t j = 0; j < p && fits; ++j) {
      const std::uint64_t n = sizes_[j];
      if (n > bound) {
        fits = false;
      } else if (!moduli.empty() && static_cast<u128>(moduli.back()) * n <= bound) {
        moduli.back() *= n;
      } else {
        moduli.push_back(n);
      }
      group_of.push_back(static_cast<std::uint32_t>(moduli.size() - 1));
    }
    if (!fits || moduli.size() > kMaxGroups) continue;
    const std::size_t cost = moduli.size() * (2 * limbs + 10) + 3 * limbs;
    if (cost < best_cost) {
      best_cost = cost;
      limb_count_ = limbs;
      group_moduli_ = std::move(moduli);
      partition_group_ = std::move(group_of);
    }
  }
  if (limb_count_ == 0) return;
  const std::size_t limb_bits = (bits + limb_count_ - 1) / limb_count_;

  const std::size_t g_count = group_moduli_.size();
  group_barrett_.resize(g_count);
  group_weights_.resize(limb_count_ * g_count);
  for (std::size_t g = 0; g < g_count; ++g) {
    const std::uint64_t q = group_moduli_[g];
    group_barrett_[g] = ~std::uint64_t{0} / q;
    const std::uint64_t limb_weight = (std::uint64_t{1} << limb_bits) % q;
    std::uint64_t w = 1 % q;
    for (std::size_t i = 0; i < limb_count_; ++i) {
      group_weights_[g * limb_count_ + i] = w;
      w = static_cast<std::uint64_t>(static_cast<u128>(w) * limb_weight % q);
    }
  }
  small_reciprocals_.resize(p);
  for (std::size_t j = 0; j < p; ++j) small_reciprocals_[j] = ~std::uint64_t{0} / sizes_[j] + 1;
  group_fn_ = group_fn_for(digest_bytes_, limb_count_);
}

template <std::size_t Bytes>
Reducer::GroupFn Reducer::group_fn_row(std::size_t extra) {
  static_assert(kExtraLimbs == 4);
  switch (extra) {
    case 0: return &Reducer::group_remainders<Bytes, Bytes / 4>;
    case 1: return &Reducer::group_remainders<Bytes, Bytes / 4 + 1>;
    case 2: return &Reducer::group_remainders<Bytes, Bytes / 4 + 2>;
    case 3: return &Reducer::group_remainders<Bytes, Bytes / 4 + 3>;
    case 4: return &Reducer::group_remainders<Bytes, Bytes / 4 + 4>;
    default: return nullptr;
  }
}

Reducer::GroupFn Reducer::group_fn_for(std::size_t digest_bytes, std::size_t limbs) {
  const std::size_t extra = limbs - digest_bytes / 4;
  switch (digest_bytes) {
    case 8: return group_fn_row<8>(extra);
    case 16: return group_fn_row<16>(extra);
    case 32: return group_fn_row<32>(extra);
    case 64: return group_fn_row<64>(extra);
    default: return nullptr;
  }
}

template <std::size_t Bytes, std::size_t Limbs>
void Reducer::group_remainders(const std::uint8_t* digest, std::uint32_t* out) const {
  constexpr std::size_t kWords = Bytes / 8;
  constexpr std::size_t kLimbBits = (8 * Bytes + Limbs - 1) / Limbs;
  constexpr std::uint64_t kMask = (std::uint64_t{1} << kLimbBits) - 1;

  // Little-endian 64-bit words of the big-endian digest, plus one zero word so
  // the top limb may run past the end.
  std::uint64_t words[kWords + 1];
  for (std::size_t k = 0; k < kWords; ++k) {
    const std::uint8_t* at = digest + Bytes - 8 * (k + 1);
    words[k] = (std::uint64_t{load32be(at)} << 32) | load32be(at + 4);
  }
  words[kWords] = 0;
  std::uint64_t limbs[Limbs];
  for (std::size_t i = 0; i < Limbs; ++i) {
    const std::size_t bit = i * kLimbBits;
    const unsigned off = bit % 64;
    std::uint64_t v = words[bit / 64] >> off;
    if (off != 0) v |= words[bit / 64 + 1] << (64 - off);
    limbs[i] = v & kMask;
  }

  const std::uint64_t* weight = group_weights_.data();
  const std::uint64_t* moduli = group_moduli_.data();
  const std::uint64_t* barrett = group_barrett_.data();
  const std::size_t g_count = group_moduli_.size();
  // floor((2^64 - 1) / Q) underestimates the quotient by at most one.
  for (std::size_t g = 0; g < g_count; ++g, weight += Limbs) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < Limbs; ++i) acc += limbs[i] * weight[i];
    const std::uint64_t q = moduli[g];
    const auto quotient = static_cast<std::uint64_t>((static_cast<u128>(acc) * barrett[g]) >> 64);
    std::uint64_t r = acc - quotient * q;
    if (r >= q) r -= q;
    out[g] = static_cast<std::uint32_t>(r);
  }
}

inline std::uint64_t Reducer::grouped_position(const std::uint32_t* r, std::size_t j) const noexcept {
  return offsets_[j] + fastmod32(r[partition_group_[j]], small_reciprocals_[j], sizes_[j]);
}

void Reducer::locate_wordwise(const Digest& d, std::uint64_t* out) const {
  // x = sum_w word_w * 2^(32 w). Each term word_w * (2^(32 w) mod n_j) is
  // below 2^59, so sixteen of them fit in 64 bits.
  const std::size_t p = sizes_.size();
  const std::size_t words = d.size() / 4;
  for (std::size_t j = 0; j < p; ++j) out[j] = 0;
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t x = load32be(d.data() + 4 * (words - 1 - w));
    const std::uint32_t* weight = &weights_[w * p];
    for (std::size_t j = 0; j < p; ++j) out[j] += x * weight[j];
  }
  for (std::size_t j = 0; j < p; ++j) out[j] = offsets_[j] + fastmod(out[j], reciprocals_[j], sizes_[j]);
}

void Reducer::locate(const Digest& d, std::uint64_t* out) const {
  if (!grouped(d)) return locate_wordwise(d, out);
  std::uint32_t r[kMaxGroups];
  (this->*group_fn_)(d.data(), r);
  for (std::size_t j = 0; j < sizes_.size(); ++j) out[j] = grouped_position(r, j);
}

bool Reducer::all_set(const Digest& d, const std::uint8_t* bits) const {
  const std::size_t p = sizes_.size();
  if (grouped(d)) {
    std::uint32_t r[kMaxGroups];
    (this->*group_fn_)(d.data(), r);
    unsigned all = 1;
#pragma GCC unroll 4
    for (std::size_t j = 0; j < p; ++j) all &= bit_at(bits, grouped_position(r, j));
    return all != 0;
  }
  std::vector<std::uint64_t> pos(p);
  locate_wordwise(d, pos.data());
  return std::all_of(pos.begin(), pos.end(), [bits](std::uint64_t at) { return bit_at(bits, at); });
}

void Reducer::set_all(const Digest& d, std::uint8_t* bits) const {
  const std::size_t p = sizes_.size();
  if (grouped(d)) {
    std::uint32_t r[kMaxGroups];
    (this->*group_fn_)(d.data(), r);
    for (std::size_t j = 0; j < p; ++j) set_bit(bits, grouped_position(r, j));
    return;
  }
  std::vector<std::uint64_t> pos(p);
  locate_wordwise(d, pos.data());
  for (std::uint64_t at : pos) set_bit(bits, at);
}

}  // namespace tvpd::detail
