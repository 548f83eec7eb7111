#include "tvpd/wire.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "tvpd/errors.hpp"

namespace tvpd::wire {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    const auto b = encode32be(v);
    raw(b);
  }
  void u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v >> 32));
    u32(static_cast<std::uint32_t>(v));
  }
  void raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
  Bytes take() { return std::move(out_); }
  void reserve(std::size_t n) { out_.reserve(n); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

  ByteView take(const char* field, std::size_t n) {
    if (remaining() < n) throw ParseError(field, pos_, "truncated input");
    ByteView v = in_.subspan(pos_, n);
    pos_ += n;
    return v;
  }
  std::uint8_t u8(const char* field) { return take(field, 1)[0]; }
  std::uint16_t u16(const char* field) {
    const ByteView b = take(field, 2);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }
  std::uint32_t u32(const char* field) { return load32be(take(field, 4).data()); }
  std::uint64_t u64(const char* field) {
    const std::uint64_t hi = u32(field);
    return (hi << 32) | u32(field);
  }
  void finish() const {
    if (remaining() != 0) throw ParseError("trailing", pos_, std::to_string(remaining()) + " unexpected bytes");
  }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, Kind kind, const SchemeParams& params) {
  params.validate();
  if (params.kappa < 0 || params.kappa > 255) throw InvalidParams("kappa does not fit the header");
  w.raw(kMagic);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u8(static_cast<std::uint8_t>(params.kappa));
  w.u32(params.t);
  w.u16(static_cast<std::uint16_t>(params.k));
  w.u16(static_cast<std::uint16_t>(params.l));
  w.u16(static_cast<std::uint16_t>(params.p));
  w.u8(static_cast<std::uint8_t>(params.message_hash));
  w.u8(static_cast<std::uint8_t>(params.one_way));
  w.u8(static_cast<std::uint8_t>(params.filter_hash));
  if (params.time_policy) {
    w.u8(1);
    w.u64(params.time_policy->t0);
    w.u64(params.time_policy->t_delta);
  } else {
    w.u8(0);
  }
}

HashAlgo read_algo(Reader& r, const char* field) {
  const std::size_t at = r.offset();
  const auto algo = algo_from_id(r.u8(field));
  if (!algo) throw ParseError(field, at, "unknown algorithm id");
  return *algo;
}

Kind read_kind(Reader& r) {
  const ByteView magic = r.take("magic", 4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) throw ParseError("magic", 0, "not a TVPD file");
  const std::uint8_t version = r.u8("version");
  if (version != kVersion) throw VersionMismatch(version);
  const std::size_t at = r.offset();
  const std::uint8_t kind = r.u8("kind");
  if (kind < 1 || kind > 4) throw ParseError("kind", at, "unknown kind " + std::to_string(kind));
  return static_cast<Kind>(kind);
}

SchemeParams read_params(Reader& r) {
  SchemeParams params;
  params.kappa = r.u8("kappa");
  const std::size_t block = r.offset();
  params.t = r.u32("t");
  params.k = r.u16("k");
  params.l = r.u16("l");
  params.p = r.u16("p");
  params.message_hash = read_algo(r, "H");
  params.one_way = read_algo(r, "f");
  params.filter_hash = read_algo(r, "h");
  const std::size_t flag_at = r.offset();
  const std::uint8_t flag = r.u8("time_flag");
  if (flag > 1) throw ParseError("time_flag", flag_at, "flag must be 0 or 1");
  if (flag == 1) {
    params.time_valid = true;
    const std::uint64_t t0 = r.u64("t0");
    const std::uint64_t delta = r.u64("t_delta");
    params.time_policy = TimePolicy{t0, delta};
  }
  try {
    params.validate();
  } catch (const Error& e) {
    throw ParseError("params", block, e.what());
  }
  return params;
}

SchemeParams read_header(Reader& r, Kind expected) {
  const std::size_t at = 5;
  const Kind kind = read_kind(r);
  if (kind != expected) {
    throw ParseError("kind", at, "expected kind " + std::to_string(static_cast<int>(expected)) + ", found " +
                                     std::to_string(static_cast<int>(kind)));
  }
  return read_params(r);
}

}  // namespace

std::size_t header_size(const SchemeParams& params) {
  return 4 + 1 + 1 + 1 + 4 + 2 + 2 + 2 + 3 + 1 + (params.time_policy ? 16 : 0);
}

Kind peek_kind(ByteView bytes) {
  Reader r(bytes);
  return read_kind(r);
}

Bytes encode_public(const SchemeParams& params, const OhbfFilter& filter) {
  if (filter.plan().count() != params.p) throw InvalidParams("filter plan does not match p");
  Writer w;
  w.reserve(header_size(params) + 4 * params.p + filter.packed().size());
  write_header(w, Kind::kPublic, params);
  for (std::uint32_t n : filter.plan().sizes()) w.u32(n);
  w.raw(filter.packed());
  return w.take();
}

Bytes encode_hors_public(const SchemeParams& params, const std::vector<Digest>& pk) {
  if (pk.size() != params.t) throw InvalidParams("public key must hold t digests");
  Writer w;
  write_header(w, Kind::kHorsPublic, params);
  for (const Digest& d : pk) {
    if (d.size() != output_bytes(params.one_way)) throw InvalidParams("digest length does not match f");
    w.raw(d.bytes());
  }
  return w.take();
}

Bytes encode_secret(const SecretKey& sk) {
  Writer w;
  write_header(w, Kind::kSecretSeed, sk.params());
  w.raw(sk.seed());
  return w.take();
}

Bytes encode_signature(const SchemeParams& params, const Signature& sig) {
  if (sig.element_size != params.element_bytes() || sig.count() != params.k ||
      sig.elements.size() != std::size_t{params.k} * sig.element_size) {
    throw InvalidParams("signature shape does not match parameters");
  }
  Writer w;
  write_header(w, Kind::kSignature, params);
  w.u32(sig.ctr);
  w.raw(sig.elements);
  return w.take();
}

DecodedPublic decode_public(ByteView bytes) {
  Reader r(bytes);
  SchemeParams params = read_header(r, Kind::kPublic);
  const std::size_t plan_at = r.offset();
  std::vector<std::uint32_t> sizes(params.p);
  for (auto& n : sizes) n = r.u32("plan");
  std::optional<PartitionPlan> plan;
  try {
    plan.emplace(std::move(sizes));
  } catch (const Error& e) {
    throw ParseError("plan", plan_at, e.what());
  }
  const std::size_t bits_at = r.offset();
  const ByteView packed = r.take("bits", plan->total_bytes());
  r.finish();
  std::optional<OhbfFilter> filter;
  try {
    filter.emplace(OhbfFilter::from_packed(*plan, params.filter_hash, Bytes(packed.begin(), packed.end())));
  } catch (const Error& e) {
    throw ParseError("bits", bits_at, e.what());
  }
  params.plan = std::move(plan);
  return DecodedPublic{std::move(params), std::move(*filter)};
}

DecodedHorsPublic decode_hors_public(ByteView bytes) {
  Reader r(bytes);
  SchemeParams params = read_header(r, Kind::kHorsPublic);
  const std::size_t n = output_bytes(params.one_way);
  if (r.remaining() != std::size_t{params.t} * n) {
    throw ParseError("pk", r.offset(), "expected " + std::to_string(params.t) + " digests");
  }
  std::vector<Digest> pk;
  pk.reserve(params.t);
  for (std::uint32_t i = 0; i < params.t; ++i) pk.emplace_back(params.one_way, r.take("pk", n));
  r.finish();
  return DecodedHorsPublic{std::move(params), std::move(pk)};
}

SecretKey decode_secret(ByteView bytes) {
  Reader r(bytes);
  SchemeParams params = read_header(r, Kind::kSecretSeed);
  Seed seed{};
  const ByteView raw = r.take("seed", seed.size());
  r.finish();
  std::copy(raw.begin(), raw.end(), seed.begin());
  SecretKey sk(std::move(params), seed);
  sodium_memzero(seed.data(), seed.size());
  return sk;
}

DecodedSignature decode_signature(ByteView bytes) {
  Reader r(bytes);
  SchemeParams params = read_header(r, Kind::kSignature);
  Signature sig;
  sig.ctr = r.u32("ctr");
  sig.element_size = params.element_bytes();
  const ByteView elems = r.take("elements", std::size_t{params.k} * sig.element_size);
  r.finish();
  sig.elements.assign(elems.begin(), elems.end());
  return DecodedSignature{std::move(params), std::move(sig)};
}

}  // namespace tvpd::wire
