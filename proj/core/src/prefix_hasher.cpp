#include "prefix_hasher.hpp"

#include <algorithm>

namespace tvpd::detail {

PrefixHasher::PrefixHasher(HashAlgo algo, ByteView prefix) : algo_(algo) {
  switch (algo) {
    case HashAlgo::kSha2_256: {
      crypto_hash_sha256_state s;
      crypto_hash_sha256_init(&s);
      crypto_hash_sha256_update(&s, prefix.data(), prefix.size());
      state_ = s;
      return;
    }
    case HashAlgo::kSha2_512: {
      crypto_hash_sha512_state s;
      crypto_hash_sha512_init(&s);
      crypto_hash_sha512_update(&s, prefix.data(), prefix.size());
      state_ = s;
      return;
    }
    case HashAlgo::kBlake2b_256: {
      crypto_generichash_blake2b_state s;
      crypto_generichash_blake2b_init(&s, nullptr, 0, output_bytes(algo));
      crypto_generichash_blake2b_update(&s, prefix.data(), prefix.size());
      state_ = s;
      return;
    }
    default:
      state_ = Concat{Bytes(prefix.begin(), prefix.end())};
      return;
  }
}

void PrefixHasher::into(ByteView suffix, std::uint8_t* out) const {
  if (auto* s = std::get_if<crypto_hash_sha256_state>(&state_)) {
    crypto_hash_sha256_state copy = *s;
    crypto_hash_sha256_update(&copy, suffix.data(), suffix.size());
    crypto_hash_sha256_final(&copy, out);
  } else if (auto* s512 = std::get_if<crypto_hash_sha512_state>(&state_)) {
    crypto_hash_sha512_state copy = *s512;
    crypto_hash_sha512_update(&copy, suffix.data(), suffix.size());
    crypto_hash_sha512_final(&copy, out);
  } else if (auto* b = std::get_if<crypto_generichash_blake2b_state>(&state_)) {
    crypto_generichash_blake2b_state copy = *b;
    crypto_generichash_blake2b_update(&copy, suffix.data(), suffix.size());
    crypto_generichash_blake2b_final(&copy, out, output_bytes(algo_));
  } else {
    const auto& c = std::get<Concat>(state_);
    scratch_.assign(c.buffer.begin(), c.buffer.end());
    scratch_.insert(scratch_.end(), suffix.begin(), suffix.end());
    digest_into(algo_, scratch_, std::span<std::uint8_t>(out, output_bytes(algo_)));
  }
}

Digest PrefixHasher::operator()(ByteView suffix) const {
  std::uint8_t out[Digest::kMaxBytes];
  into(suffix, out);
  return Digest(algo_, std::span<const std::uint8_t>(out, output_bytes(algo_)));
}

}  // namespace tvpd::detail
