#pragma once

#include <sodium.h>

#include <variant>

#include "tvpd/bytes.hpp"
#include "tvpd/hashes.hpp"

namespace tvpd::detail {

/// H(prefix || suffix) for a fixed prefix and many short suffixes. For SHA-2
/// and BLAKE2b the state after absorbing the prefix is kept, so each call only
/// processes the suffix and padding. Other algorithms hash the concatenation.
class PrefixHasher {
 public:
  PrefixHasher(HashAlgo algo, ByteView prefix);

  Digest operator()(ByteView suffix) const;

  /// Writes output_bytes(algo) bytes to `out`.
  void into(ByteView suffix, std::uint8_t* out) const;

 private:
  struct Concat {
    Bytes buffer;
  };

  HashAlgo algo_;
  std::variant<crypto_hash_sha256_state, crypto_hash_sha512_state, crypto_generichash_blake2b_state, Concat> state_;
  mutable Bytes scratch_;
};

}  // namespace tvpd::detail
