#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tvpd/errors.hpp"
#include "tvpd/wire.hpp"

using namespace tvpd;
using namespace tvpd::wire;

namespace {

constexpr std::uint64_t kT0 = 1'700'000'000;

struct Fixture {
  TvpdKeyPair kp;
  Signature sig;
};

Fixture make(int kappa, int variant = 1) {
  const FixedClock clock(kT0);
  TvpdKeyPair kp = tvpd_keygen(preset(kappa, variant), test_support::counting_seed(), clock);
  Signature sig = tvpd_sign(kp.sk, as_bytes("wire"), clock);
  return {std::move(kp), std::move(sig)};
}

}  // namespace

TEST(Wire, PublicKeyLayoutKappa32) {
  const Fixture f = make(32);
  const Bytes pk = encode_public(f.kp);
  const std::size_t header = header_size(f.kp.params());
  EXPECT_EQ(header, 4 + 3 + 4 + 2 + 2 + 2 + 3 + 1 + 16u);
  EXPECT_EQ(pk.size(), header + 8 * 4 + 995);
  EXPECT_EQ(Bytes(pk.begin(), pk.begin() + 4), Bytes({'T', 'V', 'P', 'D'}));
  EXPECT_EQ(pk[4], 1);
  EXPECT_EQ(pk[5], 1);
  EXPECT_EQ(pk[6], 32);
  EXPECT_EQ(load32be(&pk[7]), 64u);
  EXPECT_EQ(load32be(&pk[header]), 971u);
  EXPECT_TRUE(std::equal(pk.end() - 995, pk.end(), f.kp.pk.packed().begin()));
}

TEST(Wire, SignaturePayloadSizes) {
  const Fixture f32 = make(32);
  const Bytes s32 = encode_signature(f32.kp.params(), f32.sig);
  EXPECT_EQ(s32.size() - header_size(f32.kp.params()), 68u);

  const Fixture f128 = make(128, 2);
  const Bytes s128 = encode_signature(f128.kp.params(), f128.sig);
  EXPECT_EQ(s128.size() - header_size(f128.kp.params()), 1028u);
}

TEST(Wire, CanonicalRoundTripAllPresets) {
  for (const PresetInfo& row : preset_table()) {
    SCOPED_TRACE(row.kappa);
    const Fixture f = make(row.kappa, row.variant);

    const Bytes pk = encode_public(f.kp);
    const DecodedPublic dp = decode_public(pk);
    EXPECT_EQ(dp.params, f.kp.params());
    EXPECT_EQ(dp.filter, f.kp.pk);
    EXPECT_EQ(encode_public(dp.params, dp.filter), pk);

    const Bytes sk = encode_secret(f.kp.sk);
    EXPECT_EQ(sk.size(), header_size(f.kp.params()) + 32);
    const SecretKey dsk = decode_secret(sk);
    EXPECT_EQ(encode_secret(dsk), sk);
    EXPECT_TRUE(std::equal(dsk.element(3).begin(), dsk.element(3).end(), f.kp.sk.element(3).begin()));

    const Bytes sig = encode_signature(f.kp.params(), f.sig);
    const DecodedSignature ds = decode_signature(sig);
    EXPECT_EQ(ds.sig, f.sig);
    EXPECT_EQ(encode_signature(ds.params, ds.sig), sig);

    const HorsKeyPair hk = hors_keygen(preset(row.kappa, row.variant), test_support::counting_seed());
    const Bytes hpk = encode_hors_public(hk);
    const DecodedHorsPublic dh = decode_hors_public(hpk);
    EXPECT_EQ(dh.pk, hk.pk);
    EXPECT_EQ(encode_hors_public(dh.params, dh.pk), hpk);
  }
}

TEST(Wire, PeekKind) {
  const Fixture f = make(32);
  EXPECT_EQ(peek_kind(encode_public(f.kp)), Kind::kPublic);
  EXPECT_EQ(peek_kind(encode_secret(f.kp.sk)), Kind::kSecretSeed);
  EXPECT_EQ(peek_kind(encode_signature(f.kp.params(), f.sig)), Kind::kSignature);
}

TEST(Wire, CorruptMagic) {
  const Fixture f = make(32);
  Bytes pk = encode_public(f.kp);
  pk[2] = 'X';
  try {
    (void)decode_public(pk);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "magic");
    EXPECT_EQ(e.offset(), 0u);
  }
}

TEST(Wire, VersionMismatch) {
  const Fixture f = make(32);
  Bytes sig = encode_signature(f.kp.params(), f.sig);
  sig[4] = 2;
  EXPECT_THROW((void)decode_signature(sig), VersionMismatch);
}

TEST(Wire, TruncationReportsOffset) {
  const Fixture f = make(32);
  const Bytes pk = encode_public(f.kp);
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10}, std::size_t{30}, pk.size() - 1}) {
    const Bytes part(pk.begin(), pk.begin() + cut);
    try {
      (void)decode_public(part);
      FAIL() << "cut " << cut;
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), cut);
    }
  }
}

TEST(Wire, StrictDecoding) {
  const Fixture f = make(32);
  Bytes sig = encode_signature(f.kp.params(), f.sig);
  sig.push_back(0);
  EXPECT_THROW((void)decode_signature(sig), ParseError);

  const Bytes pk = encode_public(f.kp);
  EXPECT_THROW((void)decode_signature(pk), ParseError);  // wrong kind

  Bytes bad_algo = pk;
  bad_algo[17] = 0x77;  // H id
  try {
    (void)decode_public(bad_algo);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "H");
    EXPECT_EQ(e.offset(), 17u);
  }

  Bytes bad_flag = pk;
  bad_flag[20] = 2;
  EXPECT_THROW((void)decode_public(bad_flag), ParseError);

  Bytes bad_plan = pk;
  store32be(&bad_plan[header_size(f.kp.params())], 977);  // duplicate size
  EXPECT_THROW((void)decode_public(bad_plan), ParseError);

  Bytes bad_padding = encode_public(make(48).kp);
  bad_padding.back() |= 0x01;  // 15319 bits leaves one padding bit
  EXPECT_THROW((void)decode_public(bad_padding), ParseError);
}

TEST(Wire, FuzzNeverCrashes) {
  std::mt19937_64 rng(99);
  const Fixture f = make(32);
  const std::vector<Bytes> seeds = {encode_public(f.kp), encode_secret(f.kp.sk),
                                    encode_signature(f.kp.params(), f.sig)};
  int errors = 0;
  for (int i = 0; i < 20000; ++i) {
    Bytes b;
    if (i % 4 == 0) {
      b = test_support::random_bytes(rng, rng() % 64);
    } else {
      b = seeds[rng() % seeds.size()];
      const int flips = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < flips; ++k) b[rng() % b.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
      if (rng() % 3 == 0) b.resize(rng() % (b.size() + 1));
    }
    try {
      switch (i % 4) {
        case 0: (void)decode_public(b); break;
        case 1: (void)decode_secret(b); break;
        case 2: (void)decode_signature(b); break;
        default: (void)decode_hors_public(b); break;
      }
    } catch (const Error&) {
      ++errors;
    }
  }
  EXPECT_GT(errors, 0);
}
