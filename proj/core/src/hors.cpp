#include "tvpd/hors.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "tvpd/counters.hpp"
#include "tvpd/errors.hpp"

#include "prefix_hasher.hpp"

namespace tvpd {

Seed generate_seed() {
  if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  Seed s{};
  randombytes_buf(s.data(), s.size());
  return s;
}

SecretKey::SecretKey(SchemeParams params, const Seed& seed) : params_(std::move(params)), seed_(seed) {
  params_.validate();
  const std::size_t elem = params_.element_bytes();
  material_.resize(std::size_t{params_.t} * elem);

  std::array<std::uint8_t, 36> buf{};
  std::copy(seed.begin(), seed.end(), buf.begin());
  std::array<std::uint8_t, Digest::kMaxBytes> out{};
  const std::size_t out_len = output_bytes(params_.message_hash);
  auto& counters = op_counters();
  for (std::uint32_t i = 1; i <= params_.t; ++i) {
    store32be(buf.data() + 32, i);
    digest_into(params_.message_hash, buf, std::span(out.data(), out_len));
    std::memcpy(material_.data() + std::size_t{i - 1} * elem, out.data(), elem);
  }
  counters.message_hash += params_.t;
  sodium_memzero(out.data(), out.size());
  sodium_memzero(buf.data(), buf.size());
}

SecretKey::~SecretKey() { wipe(); }

SecretKey::SecretKey(const SecretKey& other)
    : params_(other.params_), seed_(other.seed_), material_(other.material_),
      issued_(other.issued_.load(std::memory_order_relaxed)) {}

SecretKey& SecretKey::operator=(const SecretKey& other) {
  if (this != &other) {
    wipe();
    params_ = other.params_;
    seed_ = other.seed_;
    material_ = other.material_;
    issued_.store(other.issued_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  }
  return *this;
}

SecretKey::SecretKey(SecretKey&& other) noexcept
    : params_(std::move(other.params_)), seed_(other.seed_), material_(std::move(other.material_)),
      issued_(other.issued_.load(std::memory_order_relaxed)) {
  other.wipe();
}

SecretKey& SecretKey::operator=(SecretKey&& other) noexcept {
  if (this != &other) {
    wipe();
    params_ = std::move(other.params_);
    seed_ = other.seed_;
    material_ = std::move(other.material_);
    issued_.store(other.issued_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    other.wipe();
  }
  return *this;
}

ByteView SecretKey::element(std::size_t i) const {
  if (i >= params_.t || material_.empty()) throw std::out_of_range("secret element index " + std::to_string(i));
  const std::size_t elem = params_.element_bytes();
  return ByteView(material_).subspan(i * elem, elem);
}

void SecretKey::wipe() noexcept {
  if (!material_.empty()) sodium_memzero(material_.data(), material_.size());
  sodium_memzero(seed_.data(), seed_.size());
  material_.clear();
}

namespace {

// Reads k consecutive w-bit big-endian fields starting at bit 0 of `d`.
void split_indices(const Digest& d, unsigned w, std::uint32_t k, std::uint32_t* out) {
  const std::uint8_t* bytes = d.data();
  std::uint64_t window = 0;
  unsigned held = 0;
  std::size_t next = 0;
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
  for (std::uint32_t j = 0; j < k; ++j) {
    while (held < w) {
      window = (window << 8) | bytes[next++];
      held += 8;
    }
    out[j] = static_cast<std::uint32_t>((window >> (held - w)) & mask);
    held -= w;
    window &= (std::uint64_t{1} << held) - 1;
  }
}

// Hashes message || be32(ctr), absorbing the message once.
class IndexDeriver {
 public:
  IndexDeriver(const SchemeParams& params, ByteView message)
      : hasher_(params.message_hash, message), w_(params.log2_t()), k_(params.k), t_(params.t),
        seen_((std::size_t{params.t} + 63) / 64) {}

  void derive(std::uint32_t ctr, std::uint32_t* out) {
    std::uint8_t suffix[4];
    store32be(suffix, ctr);
    const Digest d = hasher_(ByteView(suffix, 4));
    ++op_counters().message_hash;
    split_indices(d, w_, k_, out);
  }

  // derive() that stops at the first repeated index. Returns true and fills
  // all k entries of `out` only when the indices are distinct.
  bool derive_distinct(std::uint32_t ctr, std::uint32_t* out) {
    std::uint8_t suffix[4];
    // Zero tail so a 32-bit load at any consumed bit stays in bounds.
    std::uint8_t d[Digest::kMaxBytes + 4] = {};
    store32be(suffix, ctr);
    hasher_.into(ByteView(suffix, 4), d);
    ++op_counters().message_hash;

    const std::uint32_t mask = (std::uint32_t{1} << w_) - 1;
    std::uint32_t j = 0;
    for (std::size_t bit = 0; j < k_; ++j, bit += w_) {
      const std::uint32_t i = (load32be(d + bit / 8) >> (32 - w_ - bit % 8)) & mask;
      const std::uint64_t flag = std::uint64_t{1} << (i & 63);
      if (seen_[i >> 6] & flag) break;
      seen_[i >> 6] |= flag;
      out[j] = i;
    }
    for (std::uint32_t u = 0; u < j; ++u) seen_[out[u] >> 6] = 0;
    return j == k_;
  }

  std::uint32_t k() const { return k_; }
  std::uint32_t t() const { return t_; }

 private:
  detail::PrefixHasher hasher_;
  unsigned w_;
  std::uint32_t k_;
  std::uint32_t t_;
  std::vector<std::uint64_t> seen_;
};

std::uint32_t search_counter(IndexDeriver& deriver, std::vector<std::uint32_t>& indices) {
  for (std::uint32_t ctr = 0; ctr < kMaxCounterAttempts; ++ctr) {
    if (deriver.derive_distinct(ctr, indices.data())) return ctr;
  }
  throw CounterExhausted("no counter below 2^20 yields distinct indices");
}

}  // namespace

bool indices_distinct(std::span<const std::uint32_t> indices, std::uint32_t t) {
  constexpr std::size_t kStackWords = 64;
  std::array<std::uint64_t, kStackWords> small{};
  std::vector<std::uint64_t> large;
  std::uint64_t* seen = small.data();
  const std::size_t words = (std::size_t{t} + 63) / 64;
  if (words > kStackWords) {
    large.assign(words, 0);
    seen = large.data();
  }
  for (std::uint32_t i : indices) {
    if (i >= t) return false;
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (seen[i >> 6] & bit) return false;
    seen[i >> 6] |= bit;
  }
  return true;
}

std::vector<std::uint32_t> derive_indices(const SchemeParams& params, ByteView message, std::uint32_t ctr) {
  params.validate();
  IndexDeriver deriver(params, message);
  std::vector<std::uint32_t> out(params.k);
  deriver.derive(ctr, out.data());
  return out;
}

std::uint32_t find_counter(const SchemeParams& params, ByteView message) {
  params.validate();
  IndexDeriver deriver(params, message);
  std::vector<std::uint32_t> indices(params.k);
  return search_counter(deriver, indices);
}

HorsKeyPair hors_keygen(const SchemeParams& params, const Seed& seed) {
  HorsKeyPair kp{SecretKey(params, seed), {}};
  kp.pk.reserve(params.t);
  for (std::uint32_t i = 0; i < params.t; ++i) kp.pk.push_back(digest(params.one_way, kp.sk.element(i)));
  op_counters().one_way += params.t;
  return kp;
}

Signature hors_sign(const SecretKey& sk, ByteView message) {
  const SchemeParams& params = sk.params();
  IndexDeriver deriver(params, message);
  std::vector<std::uint32_t> indices(params.k);
  Signature sig;
  sig.ctr = search_counter(deriver, indices);
  sig.element_size = params.element_bytes();
  sig.elements.reserve(std::size_t{params.k} * sig.element_size);
  for (std::uint32_t i : indices) {
    const ByteView e = sk.element(i);
    sig.elements.insert(sig.elements.end(), e.begin(), e.end());
  }
  sk.note_signature();
  return sig;
}

bool hors_verify(std::span<const Digest> pk, const SchemeParams& params, ByteView message, const Signature& sig) {
  if (pk.size() != params.t) return false;
  if (sig.element_size != params.element_bytes() || sig.elements.size() != std::size_t{params.k} * sig.element_size) {
    return false;
  }
  IndexDeriver deriver(params, message);
  std::vector<std::uint32_t> indices(params.k);
  deriver.derive(sig.ctr, indices.data());
  if (!indices_distinct(indices, params.t)) return false;
  auto& counters = op_counters();
  for (std::uint32_t j = 0; j < params.k; ++j) {
    ++counters.one_way;
    if (!(digest(params.one_way, sig.element(j)) == pk[indices[j]])) return false;
  }
  return true;
}

}  // namespace tvpd
