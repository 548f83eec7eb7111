#include "tvpd/tvpd_hors.hpp"

#include <sodium.h>

#include <algorithm>

#include "tvpd/counters.hpp"
#include "tvpd/errors.hpp"

namespace tvpd {

namespace {

constexpr std::size_t kMaxElementBytes = 0xFFFF / 8;

// Filter entries bind each secret string to its 1-based position. One buffer
// is reused per call; it is wiped on destruction when it held key material.
class BoundElement {
 public:
  explicit BoundElement(bool secret) : secret_(secret) {}
  BoundElement(const BoundElement&) = delete;
  BoundElement& operator=(const BoundElement&) = delete;
  ~BoundElement() {
    if (secret_) sodium_memzero(buf_.data(), used_);
  }

  ByteView bind(ByteView element, std::uint32_t position) {
    std::copy(element.begin(), element.end(), buf_.begin());
    store32be(buf_.data() + element.size(), position);
    used_ = std::max(used_, element.size() + 4);
    return {buf_.data(), element.size() + 4};
  }

 private:
  std::array<std::uint8_t, kMaxElementBytes + 4> buf_;
  std::size_t used_ = 0;
  bool secret_;
};

}  // namespace

TvpdKeyPair tvpd_keygen(SchemeParams params, const Seed& seed, const Clock& clock) {
  params.validate();
  if (!params.plan) throw InvalidParams("filter partition plan is required");
  if (params.time_valid && !params.time_policy) params.time_policy = TimePolicy{clock.now(), kDefaultTimeDelta};
  PartitionPlan plan = *params.plan;
  const HashAlgo h = params.filter_hash;
  TvpdKeyPair kp{SecretKey(std::move(params), seed), OhbfFilter(std::move(plan), h)};
  BoundElement bound(/*secret=*/true);
  for (std::uint32_t i = 0; i < kp.sk.count(); ++i) kp.pk.insert(bound.bind(kp.sk.element(i), i + 1));
  return kp;
}

Signature tvpd_sign(const SecretKey& sk, ByteView message, const Clock& clock) {
  const auto& policy = sk.params().time_policy;
  if (policy && !policy->contains(clock.now())) throw OutsideTimeWindow("signing time is outside the key's validity window");
  return hors_sign(sk, message);
}

VerifyStatus tvpd_verify_status(const OhbfFilter& pk, const SchemeParams& params, ByteView message,
                                const Signature& sig, const Clock& clock) {
  if (params.time_policy && !params.time_policy->contains(clock.now())) return VerifyStatus::kOutsideWindow;
  if (sig.element_size != params.element_bytes() || sig.elements.size() != std::size_t{params.k} * sig.element_size) {
    return VerifyStatus::kReject;
  }
  if (!params.plan || !(*params.plan == pk.plan()) || pk.algo() != params.filter_hash) return VerifyStatus::kReject;
  const std::vector<std::uint32_t> indices = derive_indices(params, message, sig.ctr);
  if (!indices_distinct(indices, params.t)) return VerifyStatus::kReject;
  BoundElement bound(/*secret=*/false);
  for (std::uint32_t j = 0; j < params.k; ++j) {
    if (!pk.check(bound.bind(sig.element(j), indices[j] + 1))) return VerifyStatus::kReject;
  }
  return VerifyStatus::kAccept;
}

}  // namespace tvpd
