#include "tvpd/params.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "tvpd/errors.hpp"

namespace tvpd {

unsigned SchemeParams::log2_t() const {
  return static_cast<unsigned>(std::countr_zero(t));
}

void SchemeParams::validate() const {
  auto fail = [](const std::string& what) { throw InvalidParams(what); };
  if (t < 2 || !std::has_single_bit(t) || t > (1u << 20)) fail("t must be a power of two in [2, 2^20]");
  if (k < 1 || k > t || k > 0xFFFF) fail("k must be in [1, t]");
  if (l == 0 || l % 8 != 0 || l > 0xFFFF) fail("l must be a positive multiple of 8");
  if (l > output_bits(message_hash)) fail("l exceeds the message hash output");
  if (index_bits() > output_bits(message_hash)) fail("k * log2(t) exceeds the message hash output");
  if (p < 2 || p > 0xFFFF) fail("p must be at least 2");
  if (plan && plan->count() != p) fail("plan has " + std::to_string(plan->count()) + " partitions, p = " + std::to_string(p));
  if (time_policy && time_policy->t_delta == 0) fail("time window must be positive");
}

double fpp_eq1(const PartitionPlan& plan, std::uint64_t inserted) {
  return std::exp2(-fpp_bits(plan, inserted));
}

double fpp_bits(const PartitionPlan& plan, std::uint64_t inserted) {
  if (inserted == 0) return INFINITY;
  const double p = static_cast<double>(plan.count());
  double inv_sum = 0;
  for (std::uint32_t n : plan.sizes()) inv_sum += 1.0 / n;
  // (prod exp(-m/n_i))^(1/p) = exp(-m * sum(1/n_i) / p)
  const double miss = -std::expm1(-static_cast<double>(inserted) * inv_sum / p);
  return -p * std::log2(miss);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PartitionPlan plan_partitions(std::uint64_t total_bits_target, std::uint32_t p) {
  if (p < 2) throw InfeasiblePlan("need at least two partitions");
  if (total_bits_target < std::uint64_t{p} * 3) {
    throw InfeasiblePlan("target of " + std::to_string(total_bits_target) + " bits is too small for " +
                         std::to_string(p) + " partitions");
  }
  const std::uint64_t centre = total_bits_target / p;
  const std::uint32_t below = (p + 1) / 2;
  std::vector<std::uint32_t> sizes;
  sizes.reserve(p);
  for (std::uint64_t x = centre; x >= 2 && sizes.size() < below; --x) {
    if (is_prime(x)) sizes.push_back(static_cast<std::uint32_t>(x));
  }
  if (sizes.size() < below) {
    throw InfeasiblePlan("not enough primes at or below " + std::to_string(centre));
  }
  for (std::uint64_t x = centre + 1; sizes.size() < p; ++x) {
    if (x > PartitionPlan::kMaxPartitionBits) throw InfeasiblePlan("partition sizes exceed the supported range");
    if (is_prime(x)) sizes.push_back(static_cast<std::uint32_t>(x));
  }
  std::sort(sizes.begin(), sizes.end());
  return PartitionPlan(std::move(sizes));
}

SecurityReport security_report(const SchemeParams& params, std::optional<std::uint64_t> inserted) {
  params.validate();
  if (!params.plan) throw InvalidParams("security report needs a partition plan");
  SecurityReport r;
  const double t = params.t;
  const double k = params.k;
  r.hors_subset_bits = k * (std::log2(t) - std::log2(k));
  r.trunc_hash_bits = std::min<double>(params.index_bits(), output_bits(params.message_hash)) / 2.0;
  r.ohbf_hash_bits = output_bits(params.filter_hash) / 2.0;
  r.fpp_bits = fpp_bits(*params.plan, inserted.value_or(params.t));
  r.kappa = std::min({r.hors_subset_bits, r.trunc_hash_bits, r.ohbf_hash_bits, r.fpp_bits});
  return r;
}

namespace {

using enum HashAlgo;

// Filter budgets reproduce the published sizes where those reach the level's
// false-positive target. kappa 96 and the first kappa 128 row needed larger
// filters to do so.
constexpr std::array<PresetInfo, 9> kPresets = {{
    {32, 1, 64, 16, 32, 8, kSha2_256, kXxh3_64, kSha2_256, kBlake2s_128, 7960, 0.971, true},
    {32, 2, 64, 32, 32, 8, kSha2_256, kXxh3_64, kSha2_256, kBlake2s_128, 7960, 0.971, true},
    {48, 1, 128, 16, 48, 17, kSha2_256, kXxh3_128, kSha2_256, kBlake2s_128, 15319, 1.87, true},
    {64, 1, 256, 16, 64, 28, kSha2_256, kXxh3_128, kSha2_256, kBlake2s_128, 32228, 3.93, true},
    {64, 2, 128, 32, 64, 28, kSha2_256, kXxh3_128, kSha2_256, kBlake2s_128, 15988, 1.95, true},
    {72, 1, 512, 16, 72, 36, kSha2_256, kCity_256, kSha2_256, kBlake2s_160, 64717, 7.9, false},
    {96, 1, 256, 32, 96, 38, kSha2_256, kCity_256, kSha2_256, kBlake2b_256, 50428, 5.44, false},
    {128, 1, 512, 32, 128, 28, kSha2_512, kCity_256, kSha2_256, kBlake2b_256, 333844, 40.73, false},
    {128, 2, 256, 64, 128, 30, kSha2_512, kCity_256, kSha2_256, kBlake2b_256, 144015, 17.58, false},
}};

}  // namespace

std::span<const PresetInfo> preset_table() { return kPresets; }

const PresetInfo& preset_info(int kappa, int variant) {
  for (const PresetInfo& row : kPresets) {
    if (row.kappa == kappa && row.variant == variant) return row;
  }
  throw UnknownPreset("no preset for kappa=" + std::to_string(kappa) + " variant=" + std::to_string(variant));
}

SchemeParams preset(int kappa, int variant, HorsFamily family) {
  const PresetInfo& row = preset_info(kappa, variant);
  SchemeParams params;
  params.kappa = row.kappa;
  params.t = row.t;
  params.k = row.k;
  params.l = row.l;
  params.p = row.p;
  params.message_hash = row.message_hash;
  params.one_way = family == HorsFamily::kSha2 ? row.one_way_sha2 : row.one_way_blake2;
  params.filter_hash = row.filter_hash;
  params.plan = plan_partitions(row.filter_bits_budget, row.p);
  params.time_valid = row.time_valid;
  params.validate();
  return params;
}

std::optional<PresetInfo> match_preset(const SchemeParams& params) {
  for (const PresetInfo& row : kPresets) {
    if (row.t == params.t && row.k == params.k && row.l == params.l && row.p == params.p &&
        row.message_hash == params.message_hash && row.filter_hash == params.filter_hash &&
        (params.one_way == row.one_way_sha2 || params.one_way == row.one_way_blake2)) {
      return row;
    }
  }
  return std::nullopt;
}

}  // namespace tvpd
