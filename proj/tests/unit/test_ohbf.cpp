#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "golden_vectors.hpp"
#include "test_support.hpp"
#include "tvpd/counters.hpp"
#include "tvpd/digest_int.hpp"
#include "tvpd/errors.hpp"
#include "tvpd/ohbf.hpp"
#include "tvpd/params.hpp"

using namespace tvpd;

namespace {

const std::vector<std::uint32_t> kPlan32 = {971, 977, 983, 991, 997, 1009, 1013, 1019};

}  // namespace

TEST(PartitionPlan, Layout) {
  const PartitionPlan plan(kPlan32);
  EXPECT_EQ(plan.count(), 8u);
  EXPECT_EQ(plan.total_bits(), 7960u);
  EXPECT_EQ(plan.total_bytes(), 995u);
  EXPECT_EQ(plan.offset(0), 0u);
  EXPECT_EQ(plan.offset(1), 971u);
  EXPECT_EQ(plan.offset(7), 7960u - 1019u);
}

TEST(PartitionPlan, RejectsBadPlans) {
  EXPECT_THROW(PartitionPlan({11}), InvalidPlan);
  EXPECT_THROW(PartitionPlan({}), InvalidPlan);
  EXPECT_THROW(PartitionPlan({6, 9}), InvalidPlan);  // gcd 3
  EXPECT_THROW(PartitionPlan({1, 7}), InvalidPlan);
  EXPECT_THROW(PartitionPlan({7, PartitionPlan::kMaxPartitionBits + 1}), InvalidPlan);
  EXPECT_THROW(PartitionPlan({7, 11}, 100), InvalidPlan);
  EXPECT_NO_THROW(PartitionPlan({8, 9, 25}));  // coprime, not prime
}

TEST(Ohbf, InsertedElementsAlwaysPass) {
  std::mt19937_64 rng(7);
  for (HashAlgo h : kAllHashAlgos) {
    OhbfFilter f(PartitionPlan(kPlan32), h);
    std::vector<Bytes> items;
    for (int i = 0; i < 64; ++i) items.push_back(test_support::random_bytes(rng, 1 + rng() % 40));
    for (const auto& it : items) f.insert(it);
    for (const auto& it : items) EXPECT_TRUE(f.check(it)) << algo_name(h);
    EXPECT_EQ(f.inserted_count(), 64u);
  }
}

TEST(Ohbf, EmptyFilterRejectsEverything) {
  OhbfFilter f(PartitionPlan(kPlan32), HashAlgo::kXxh3_64);
  EXPECT_EQ(f.popcount(), 0u);
  EXPECT_FALSE(f.check(as_bytes("anything")));
}

TEST(Ohbf, OneBitPerPartitionPerElement) {
  OhbfFilter f(PartitionPlan(kPlan32), HashAlgo::kXxh3_128);
  f.insert(as_bytes("one"));
  EXPECT_EQ(f.popcount(), 8u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(f.popcount_partition(j), 1u);
}

TEST(Ohbf, ReductionMatchesBigIntegerRoute) {
  // The filter folds digests with precomputed word weights. Compare against a
  // straightforward arbitrary-precision remainder for every hash width.
  std::mt19937_64 rng(11);
  const std::vector<std::uint32_t> odd_plan = {PartitionPlan::kMaxPartitionBits - 1, 3, 65537, 1000003};
  for (HashAlgo h : kAllHashAlgos) {
    for (const auto& sizes : {kPlan32, odd_plan}) {
      OhbfFilter f(PartitionPlan(sizes), h);
      for (int trial = 0; trial < 200; ++trial) {
        const Digest d = digest(h, test_support::random_bytes(rng, 16));
        const BigUint x = digest_to_uint(d);
        const auto pos = f.positions(d);
        for (std::size_t j = 0; j < sizes.size(); ++j) {
          const auto expect = static_cast<std::uint32_t>(x % sizes[j]);
          ASSERT_EQ(f.reduce(d, j), expect) << algo_name(h) << " j=" << j;
          ASSERT_EQ(pos[j], f.plan().offset(j) + expect);
        }
      }
    }
  }
}

TEST(Ohbf, ReductionMatchesBigIntegerForPresetPlans) {
  // Preset plans under every hash width, plus a plan of many tiny primes and
  // one with more partitions than a single pass can group.
  std::mt19937_64 rng(12);
  std::vector<std::vector<std::uint32_t>> plans;
  for (const PresetInfo& row : preset_table()) {
    const SchemeParams params = preset(row.kappa, row.variant);
    plans.emplace_back(params.plan->sizes().begin(), params.plan->sizes().end());
  }
  std::vector<std::uint32_t> primes;
  for (std::uint32_t n = 2; primes.size() < 80; ++n) {
    bool prime = true;
    for (std::uint32_t q : primes) prime = prime && n % q != 0;
    if (prime) primes.push_back(n);
  }
  plans.emplace_back(primes.begin(), primes.begin() + 40);
  plans.push_back(primes);
  for (HashAlgo h : kAllHashAlgos) {
    for (const auto& sizes : plans) {
      OhbfFilter f(PartitionPlan(sizes), h);
      for (int trial = 0; trial < 50; ++trial) {
        Bytes raw = test_support::random_bytes(rng, output_bytes(h));
        if (trial == 0) std::fill(raw.begin(), raw.end(), 0xff);
        if (trial == 1) std::fill(raw.begin(), raw.end(), 0x00);
        const Digest d(h, raw);
        const BigUint x = digest_to_uint(d);
        const auto pos = f.positions(d);
        for (std::size_t j = 0; j < sizes.size(); ++j) {
          ASSERT_EQ(pos[j], f.plan().offset(j) + static_cast<std::uint64_t>(x % sizes[j]))
              << algo_name(h) << " p=" << sizes.size() << " j=" << j;
        }
        OhbfFilter single(PartitionPlan(sizes), h);
        single.insert_digest(d);
        ASSERT_TRUE(single.check_digest(d));
        for (std::uint64_t at : pos) ASSERT_TRUE(single.test_bit(at));
      }
    }
  }
}

TEST(Ohbf, AllOnesDigestReduction) {
  // Worst case for the weighted accumulation: every word is 0xffffffff.
  for (HashAlgo h : kAllHashAlgos) {
    Bytes ones(output_bytes(h), 0xff);
    const Digest d(h, ones);
    OhbfFilter f(PartitionPlan({PartitionPlan::kMaxPartitionBits - 1, PartitionPlan::kMaxPartitionBits - 3}), h);
    const BigUint x = digest_to_uint(d);
    EXPECT_EQ(f.reduce(d, 0), static_cast<std::uint32_t>(x % (PartitionPlan::kMaxPartitionBits - 1)));
    EXPECT_EQ(f.reduce(d, 1), static_cast<std::uint32_t>(x % (PartitionPlan::kMaxPartitionBits - 3)));
  }
}

TEST(Ohbf, CountsOneHashAndPReductionsPerQuery) {
  OhbfFilter f(PartitionPlan(kPlan32), HashAlgo::kXxh3_64);
  reset_op_counters();
  f.insert(as_bytes("a"));
  (void)f.check(as_bytes("b"));
  EXPECT_EQ(op_counters().filter_hash, 2u);
  EXPECT_EQ(op_counters().mod_reductions, 16u);
}

TEST(Ohbf, PackedRoundTripAndPadding) {
  OhbfFilter f(PartitionPlan({7, 11, 13}), HashAlgo::kXxh3_64);  // 31 bits, 1 padding bit
  for (int i = 0; i < 5; ++i) f.insert(encode32be(i));
  const Bytes packed(f.packed().begin(), f.packed().end());
  ASSERT_EQ(packed.size(), 4u);
  EXPECT_EQ(packed.back() & 0x01, 0);
  const OhbfFilter g = OhbfFilter::from_packed(f.plan(), f.algo(), packed);
  EXPECT_EQ(f, g);

  Bytes dirty = packed;
  dirty[3] |= 0x01;
  EXPECT_THROW(OhbfFilter::from_packed(f.plan(), f.algo(), dirty), InvalidPlan);
  Bytes short_bits(packed.begin(), packed.end() - 1);
  EXPECT_THROW(OhbfFilter::from_packed(f.plan(), f.algo(), short_bits), InvalidPlan);
}

TEST(Ohbf, PackingIsMsbFirst) {
  OhbfFilter f(PartitionPlan({7, 11, 13}), HashAlgo::kXxh3_64);
  f.insert(as_bytes("x"));
  const auto pos = f.positions(digest(HashAlgo::kXxh3_64, as_bytes("x")));
  for (std::uint64_t g : pos) {
    EXPECT_TRUE(f.packed()[g / 8] & (0x80 >> (g % 8)));
    EXPECT_TRUE(f.test_bit(g));
  }
  EXPECT_THROW((void)f.test_bit(31), std::out_of_range);
}

TEST(Ohbf, EmpiricalFppMatchesFormula) {
  // Shrunken plan so that false positives are frequent enough to count.
  const PartitionPlan plan({13, 17, 19});
  OhbfFilter f(plan, HashAlgo::kXxh3_64);
  constexpr int kInserted = 6;
  for (int i = 0; i < kInserted; ++i) f.insert(encode32be(0x10000000u + i));
  // The formula is an expectation over filters; average over many filters.
  std::mt19937_64 rng(3);
  constexpr int kFilters = 200, kProbes = 2000;
  long hits = 0;
  for (int fi = 0; fi < kFilters; ++fi) {
    OhbfFilter g(plan, HashAlgo::kXxh3_64);
    for (int i = 0; i < kInserted; ++i) g.insert(test_support::random_bytes(rng, 12));
    for (int q = 0; q < kProbes; ++q) hits += g.check(test_support::random_bytes(rng, 13));
  }
  const double n = double(kFilters) * kProbes;
  const double expect = fpp_eq1(plan, kInserted);
  const double sigma = std::sqrt(expect * (1 - expect) / n);
  // The exponential approximation is slightly off at these tiny sizes, so
  // allow the model error on top of the sampling error.
  EXPECT_NEAR(hits / n, expect, 3 * sigma + 0.15 * expect);
}

TEST(Ohbf, GoldenFilterKappa64) {
  std::vector<std::uint32_t> sizes(golden::kPlan64v2.begin(), golden::kPlan64v2.end());
  OhbfFilter f(PartitionPlan(sizes), HashAlgo::kXxh3_128);
  const Seed seed = test_support::counting_seed();
  for (std::uint32_t i = 1; i <= 128; ++i) {
    Bytes in(seed.begin(), seed.end());
    const auto be = encode32be(i);
    in.insert(in.end(), be.begin(), be.end());
    const Digest d = digest(HashAlgo::kSha2_256, in);
    Bytes element(d.data(), d.data() + 8);
    element.insert(element.end(), be.begin(), be.end());
    f.insert(element);
  }
  EXPECT_EQ(f.packed().size(), golden::kTvpdPk64Bytes);
  EXPECT_EQ(f.popcount(), golden::kTvpdPk64Popcount);
  EXPECT_EQ(test_support::sha256_hex(f.packed()), golden::kTvpdPk64Sha256);
}
