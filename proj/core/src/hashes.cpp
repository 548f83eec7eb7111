#include "tvpd/hashes.hpp"

#include <sodium.h>

#include <string>

#define XXH_INLINE_ALL
#include <xxhash.h>

#include <citycrc.h>

#include "blake2s.hpp"
#include "tvpd/errors.hpp"

namespace tvpd {

std::string_view algo_name(HashAlgo algo) {
  switch (algo) {
    case HashAlgo::kSha2_256: return "SHA2-256";
    case HashAlgo::kSha2_512: return "SHA2-512";
    case HashAlgo::kBlake2s_128: return "BLAKE2s-128";
    case HashAlgo::kBlake2s_160: return "BLAKE2s-160";
    case HashAlgo::kBlake2b_256: return "BLAKE2b-256";
    case HashAlgo::kXxh3_64: return "XXH3-64";
    case HashAlgo::kXxh3_128: return "XXH3-128";
    case HashAlgo::kCity_256: return "CITY-256";
  }
  throw UnknownAlgorithm("hash algorithm id " + std::to_string(static_cast<int>(algo)));
}

HashAlgo parse_algo(std::string_view name) {
  for (HashAlgo algo : kAllHashAlgos) {
    if (algo_name(algo) == name) return algo;
  }
  throw UnknownAlgorithm("unknown hash algorithm '" + std::string(name) + "'");
}

std::optional<HashAlgo> algo_from_id(std::uint8_t id) {
  if (id >= 1 && id <= 8) return static_cast<HashAlgo>(id);
  return std::nullopt;
}

unsigned output_bits(HashAlgo algo) {
  switch (algo) {
    case HashAlgo::kSha2_256: return 256;
    case HashAlgo::kSha2_512: return 512;
    case HashAlgo::kBlake2s_128: return 128;
    case HashAlgo::kBlake2s_160: return 160;
    case HashAlgo::kBlake2b_256: return 256;
    case HashAlgo::kXxh3_64: return 64;
    case HashAlgo::kXxh3_128: return 128;
    case HashAlgo::kCity_256: return 256;
  }
  throw UnknownAlgorithm("hash algorithm id " + std::to_string(static_cast<int>(algo)));
}

Digest::Digest(HashAlgo algo, std::span<const std::uint8_t> bytes) : size_(bytes.size()), algo_(algo) {
  if (bytes.size() != output_bytes(algo)) {
    throw std::invalid_argument("digest length does not match " + std::string(algo_name(algo)));
  }
  std::copy(bytes.begin(), bytes.end(), data_.begin());
}

namespace {

// `out` holds exactly output_bytes(algo) bytes.
void hash_unchecked(HashAlgo algo, ByteView message, std::span<std::uint8_t> out) {
  const std::uint8_t* in = message.data();
  const std::size_t len = message.size();
  switch (algo) {
    case HashAlgo::kSha2_256:
      crypto_hash_sha256(out.data(), in, len);
      return;
    case HashAlgo::kSha2_512:
      crypto_hash_sha512(out.data(), in, len);
      return;
    case HashAlgo::kBlake2s_128:
    case HashAlgo::kBlake2s_160:
      detail::blake2s(out.data(), out.size(), in, len);
      return;
    case HashAlgo::kBlake2b_256:
      crypto_generichash_blake2b(out.data(), out.size(), in, len, nullptr, 0);
      return;
    case HashAlgo::kXxh3_64: {
      XXH64_canonical_t c;
      XXH64_canonicalFromHash(&c, XXH3_64bits(in, len));
      std::copy(std::begin(c.digest), std::end(c.digest), out.begin());
      return;
    }
    case HashAlgo::kXxh3_128: {
      XXH128_canonical_t c;
      XXH128_canonicalFromHash(&c, XXH3_128bits(in, len));
      std::copy(std::begin(c.digest), std::end(c.digest), out.begin());
      return;
    }
    case HashAlgo::kCity_256: {
      std::uint64_t words[4];
      CityHashCrc256(reinterpret_cast<const char*>(in), len, words);
      for (int i = 0; i < 4; ++i) store64be(out.data() + 8 * i, words[i]);
      return;
    }
  }
  throw UnknownAlgorithm("hash algorithm id " + std::to_string(static_cast<int>(algo)));
}

}  // namespace

void digest_into(HashAlgo algo, ByteView message, std::span<std::uint8_t> out) {
  if (out.size() != output_bytes(algo)) {
    throw std::invalid_argument("output buffer does not match " + std::string(algo_name(algo)));
  }
  hash_unchecked(algo, message, out);
}

Digest digest(HashAlgo algo, ByteView message) {
  Digest d;
  d.algo_ = algo;
  d.size_ = output_bytes(algo);
  hash_unchecked(algo, message, std::span<std::uint8_t>(d.data_.data(), d.size_));
  return d;
}

}  // namespace tvpd
