#pragma once

#include <cstdint>
#include <vector>

#include "tvpd/bytes.hpp"
#include "tvpd/hors.hpp"
#include "tvpd/ohbf.hpp"
#include "tvpd/params.hpp"
#include "tvpd/tvpd_hors.hpp"

namespace tvpd::wire {

inline constexpr std::uint8_t kMagic[4] = {'T', 'V', 'P', 'D'};
inline constexpr std::uint8_t kVersion = 1;

enum class Kind : std::uint8_t {
  kPublic = 1,
  kSecretSeed = 2,
  kSignature = 3,
  kHorsPublic = 4,  // plain HORS key: t digests of f
};

inline constexpr const char* kPublicExt = ".tvpd-pk";
inline constexpr const char* kSecretExt = ".tvpd-sk";
inline constexpr const char* kSignatureExt = ".tvpd-sig";

/// Size of the header for `params` (depends on whether a window is present).
std::size_t header_size(const SchemeParams& params);

/// Reads only the header and returns the kind. Throws ParseError/VersionMismatch.
Kind peek_kind(ByteView bytes);

Bytes encode_public(const SchemeParams& params, const OhbfFilter& filter);
inline Bytes encode_public(const TvpdKeyPair& kp) { return encode_public(kp.params(), kp.pk); }

Bytes encode_hors_public(const SchemeParams& params, const std::vector<Digest>& pk);
inline Bytes encode_hors_public(const HorsKeyPair& kp) { return encode_hors_public(kp.params(), kp.pk); }

Bytes encode_secret(const SecretKey& sk);

Bytes encode_signature(const SchemeParams& params, const Signature& sig);

struct DecodedPublic {
  SchemeParams params;  // params.plan is set from the stored sizes
  OhbfFilter filter;
};

struct DecodedHorsPublic {
  SchemeParams params;
  std::vector<Digest> pk;
};

struct DecodedSignature {
  SchemeParams params;
  Signature sig;
};

DecodedPublic decode_public(ByteView bytes);
DecodedHorsPublic decode_hors_public(ByteView bytes);
SecretKey decode_secret(ByteView bytes);
DecodedSignature decode_signature(ByteView bytes);

}  // namespace tvpd::wire
