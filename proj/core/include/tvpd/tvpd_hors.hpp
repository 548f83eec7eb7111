#pragma once

#include "tvpd/clock.hpp"
#include "tvpd/hors.hpp"
#include "tvpd/ohbf.hpp"
#include "tvpd/params.hpp"

namespace tvpd {

/// Key pair whose public key is a one-hash Bloom filter holding
/// s_i || be32(i) for i = 1..t.
struct TvpdKeyPair {
  SecretKey sk;
  OhbfFilter pk;

  const SchemeParams& params() const noexcept { return sk.params(); }
};

/// Expands the secret exactly like hors_keygen and inserts every s_i || be32(i)
/// into a filter built from params.plan. When params.time_valid is set and no
/// window is given, the window starts at clock.now() and lasts
/// kDefaultTimeDelta seconds.
TvpdKeyPair tvpd_keygen(SchemeParams params, const Seed& seed, const Clock& clock);

/// hors_sign behind the validity-window gate. Throws OutsideTimeWindow.
Signature tvpd_sign(const SecretKey& sk, ByteView message, const Clock& clock);

enum class VerifyStatus { kAccept, kReject, kOutsideWindow };

VerifyStatus tvpd_verify_status(const OhbfFilter& pk, const SchemeParams& params, ByteView message,
                                const Signature& sig, const Clock& clock);

inline bool tvpd_verify(const OhbfFilter& pk, const SchemeParams& params, ByteView message,
                        const Signature& sig, const Clock& clock) {
  return tvpd_verify_status(pk, params, message, sig, clock) == VerifyStatus::kAccept;
}

}  // namespace tvpd
