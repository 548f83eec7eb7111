// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bench.hpp"
#include "golden_vectors.hpp"
#include "tvpd/counters.hpp"
#include "tvpd/errors.hpp"
#include "tvpd/hors.hpp"
#include "tvpd/params.hpp"
#include "tvpd/tvpd_hors.hpp"
#include "tvpd/wire.hpp"

using namespace tvpd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::mt19937_64& rng() {
  thread_local std::mt19937_64 engine(20240601);
  return engine;
}

Bytes random_bytes(std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng()());
  return b;
}

Seed random_seed() {
  Seed s{};
  for (auto& x : s) x = static_cast<std::uint8_t>(rng()());
  return s;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SchemeParams small_params() {
  SchemeParams p;
  p.t = 64;
  p.k = 16;
  p.l = 32;
  p.p = 8;
  return p;
}

Outcome partitions() {
  const PartitionPlan plan = plan_partitions(7960, 8);
  const std::vector<std::uint32_t> expect = {971, 977, 983, 991, 997, 1009, 1013, 1019};
  const std::vector<std::uint32_t> got(plan.sizes().begin(), plan.sizes().end());
  std::ostringstream s;
  for (auto n : got) s << n << ' ';
  return {got == expect, "plan_partitions(7960, 8) = " + s.str()};
}

Outcome fpp_pinning() {
  const double bits = fpp_bits(plan_partitions(7960, 8), 64);
  bool ok = std::abs(bits - 32.0) <= 0.3;

  // Monte-Carlo on a shrunken plan: every probe sees a fresh filter holding
  // two random elements, so hits are Bernoulli with the formula's mean.
  const PartitionPlan small({13, 17, 19});
  constexpr int kInserted = 2;
  constexpr int kProbes = 100000;
  long hits = 0;
  for (int i = 0; i < kProbes; ++i) {
    OhbfFilter f(small, HashAlgo::kXxh3_64);
    for (int j = 0; j < kInserted; ++j) f.insert(random_bytes(16));
    hits += f.check(random_bytes(17));
  }
  const double expect = fpp_eq1(small, kInserted);
  const double se = std::sqrt(expect * (1 - expect) / kProbes);
  const double observed = static_cast<double>(hits) / kProbes;
  ok = ok && std::abs(observed - expect) <= 3 * se;
  return {ok, fmt("-log2 fpp = %.3f; Monte-Carlo [13,17,19] m=2: %.5f vs %.5f (%.2f SE)", bits, observed, expect,
                  (observed - expect) / se)};
}

Outcome security_calculator() {
  bool ok = true;
  std::string rows;
  for (const PresetInfo& row : preset_table()) {
    const SecurityReport r = security_report(preset(row.kappa, row.variant));
    ok = ok && r.kappa == row.kappa;
    rows += fmt("%d%s=%g ", row.kappa, row.variant == 2 ? "b" : "", r.kappa);
  }
  const SecurityReport r32 = security_report(preset(32));
  ok = ok && r32.trunc_hash_bits == 48 && r32.ohbf_hash_bits == 32 && r32.hors_subset_bits == 32;
  return {ok, rows + fmt("| kappa32 components (%g, %g, %g)", r32.trunc_hash_bits, r32.ohbf_hash_bits,
                         r32.hors_subset_bits)};
}

// Presets are independent, so they are spread over the available cores.
// Each preset seeds its own engine, making the run order-independent.
Outcome completeness() {
  const FixedClock clock(0);
  const auto rows = preset_table();
  std::atomic<std::size_t> next{0}, rejects{0}, total{0};
  auto worker = [&] {
    for (std::size_t r; (r = next++) < rows.size();) {
      rng().seed(20240601 + r);
      const TvpdKeyPair kp = tvpd_keygen(preset(rows[r].kappa, rows[r].variant), random_seed(), clock);
      for (int i = 0; i < 10000; ++i) {
        const Bytes m = random_bytes(256);
        rejects += !tvpd_verify(kp.pk, kp.params(), m, tvpd_sign(kp.sk, m, clock), clock);
        ++total;
      }
    }
  };
  {
    std::vector<std::jthread> pool(std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 4)));
    for (auto& t : pool) t = std::jthread(worker);
  }
  return {rejects == 0,
          fmt("%zu messages over %zu presets, %zu false rejects", total.load(), rows.size(), rejects.load())};
}

Outcome forgery_rejection() {
  const FixedClock clock(0);
  const TvpdKeyPair kp = tvpd_keygen(preset(32), random_seed(), clock);
  const SchemeParams& params = kp.params();
  std::size_t random_accepts = 0;
  for (int i = 0; i < 100000; ++i) {
    Signature s;
    s.ctr = static_cast<std::uint32_t>(rng()() % 64);
    s.element_size = params.element_bytes();
    s.elements = random_bytes(params.k * s.element_size);
    random_accepts += tvpd_verify(kp.pk, params, random_bytes(256), s, clock);
  }

  std::size_t mutation_accepts = 0;
  for (int i = 0; i < 10000; ++i) {
    const Bytes m = random_bytes(256);
    Signature s = tvpd_sign(kp.sk, m, clock);
    switch (i % 3) {
      case 0: {
        const std::size_t bit = rng()() % (s.elements.size() * 8);
        s.elements[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        break;
      }
      case 1: {
        const std::size_t a = rng()() % params.k;
        std::size_t b = rng()() % params.k;
        if (b == a) b = (a + 1) % params.k;
        std::swap_ranges(s.elements.begin() + a * s.element_size, s.elements.begin() + (a + 1) * s.element_size,
                         s.elements.begin() + b * s.element_size);
        break;
      }
      default:
        s.ctr += 1 + static_cast<std::uint32_t>(rng()() % 1000);
        break;
    }
    mutation_accepts += tvpd_verify(kp.pk, params, m, s, clock);
  }
  return {random_accepts == 0 && mutation_accepts == 0,
          fmt("random forgeries accepted %zu/100000, mutations accepted %zu/10000", random_accepts, mutation_accepts)};
}

Outcome differential() {
  const FixedClock clock(0);
  std::size_t mismatches = 0, pairs = 0;
  for (const PresetInfo& row : preset_table()) {
    const SchemeParams params = preset(row.kappa, row.variant);
    for (int i = 0; i < 1000; ++i) {
      const Seed seed = random_seed();
      const Bytes m = random_bytes(256);
      const SecretKey sk(params, seed);
      const Signature a = tvpd_sign(sk, m, clock);
      const Signature b = hors_sign(sk, m);
      mismatches += wire::encode_signature(params, a) != wire::encode_signature(params, b);
      ++pairs;
    }
  }
  const auto idx = derive_indices(small_params(), as_bytes("abc"), 0);
  const bool golden_ok = std::equal(idx.begin(), idx.end(), golden::kIndicesAbcCtr0.begin());
  return {mismatches == 0 && golden_ok,
          fmt("%zu/%zu signatures differ; derive_indices(\"abc\", 0) golden %s", mismatches, pairs,
              golden_ok ? "match" : "MISMATCH")};
}

Outcome weak_messages() {
  const SchemeParams params = small_params();
  // Find a message whose ctr = 0 indices collide.
  Bytes weak;
  for (std::uint32_t i = 0;; ++i) {
    const auto b = encode32be(i);
    Bytes candidate(b.begin(), b.end());
    if (!indices_distinct(derive_indices(params, candidate, 0), params.t)) {
      weak = candidate;
      break;
    }
  }
  const HorsKeyPair kp = hors_keygen(params, random_seed());
  const Signature sig = hors_sign(kp, weak);
  bool ok = sig.ctr >= 1 && hors_verify(kp.pk, params, weak, sig);

  constexpr int kMessages = 10000;
  double sum = 0;
  for (int i = 0; i < kMessages; ++i) sum += find_counter(params, random_bytes(256));
  double q = 1;
  for (int j = 1; j < 16; ++j) q *= 1 - j / 64.0;
  const double mean = (1 - q) / q;
  const double sigma = std::sqrt(1 - q) / q / std::sqrt(kMessages);
  const double observed = sum / kMessages;
  ok = ok && std::abs(observed - mean) <= 3 * sigma;
  return {ok, fmt("weak message signed with ctr=%u; mean ctr %.3f vs %.3f (%.2f sigma)", sig.ctr, observed, mean,
                  (observed - mean) / sigma)};
}

Outcome sizes() {
  const FixedClock clock(0);
  const TvpdKeyPair k32 = tvpd_keygen(preset(32), random_seed(), clock);
  const Bytes pk = wire::encode_public(k32);
  const std::size_t pk_payload = pk.size() - wire::header_size(k32.params()) - 4 * k32.params().p;
  const Bytes s32 = wire::encode_signature(k32.params(), tvpd_sign(k32.sk, as_bytes("m"), clock));
  const std::size_t sig32 = s32.size() - wire::header_size(k32.params());
  const TvpdKeyPair k128 = tvpd_keygen(preset(128, 2), random_seed(), clock);
  const Bytes s128 = wire::encode_signature(k128.params(), tvpd_sign(k128.sk, as_bytes("m"), clock));
  const std::size_t sig128 = s128.size() - wire::header_size(k128.params());
  return {pk_payload == 995 && sig32 == 68 && sig128 == 1028,
          fmt("pk payload %zu B, signature payload %zu B (kappa 32), %zu B (kappa 128)", pk_payload, sig32, sig128)};
}

Outcome performance() {
  tools::BenchConfig cfg;
  cfg.presets = {{32, 1}, {48, 1}, {64, 1}, {64, 2}, {128, 1}, {128, 2}};
  cfg.trials = 2001;
  cfg.warmup = 50;
  const auto records = tools::run_bench(cfg);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < records.size(); i += 2) {
    const tools::BenchRecord& r = records[i];
    const double need = r.kappa == 128 ? 1.5 : 2.0;
    ok = ok && r.verify_ratio >= need && std::abs(r.sign_ratio - 1.0) <= 0.10;
    if (r.kappa == 32) ok = ok && r.kg_ratio >= 1.5;
    detail += fmt("k%d%s ver %.2fx sign %.2fx kg %.2fx; ", r.kappa, r.variant == 2 ? "b" : "", r.verify_ratio,
                  r.sign_ratio, r.kg_ratio);
  }
  return {ok, detail};
}

Outcome cost_model() {
  const FixedClock clock(0);
  bool ok = true;
  for (const PresetInfo& row : preset_table()) {
    const SchemeParams params = preset(row.kappa, row.variant);
    reset_op_counters();
    const TvpdKeyPair kp = tvpd_keygen(params, random_seed(), clock);
    ok = ok && op_counters().filter_hash == params.t && op_counters().one_way == 0;
    reset_op_counters();
    const HorsKeyPair hk = hors_keygen(params, random_seed());
    ok = ok && op_counters().one_way == params.t && op_counters().filter_hash == 0;

    const Bytes m = random_bytes(256);
    const Signature sig = tvpd_sign(kp.sk, m, clock);
    reset_op_counters();
    ok = ok && tvpd_verify(kp.pk, kp.params(), m, sig, clock);
    const OpCounters c = op_counters();
    ok = ok && c.message_hash == 1 && c.filter_hash == params.k &&
         c.mod_reductions == std::uint64_t{params.k} * params.p && c.one_way == 0;
  }
  return {ok, "verify: 1 H, k h, k*p reductions; keygen: t h (TVPD) vs t f (HORS), all presets"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_s = 0;  // 0 means no runtime bound
  };
  const std::vector<Criterion> criteria = {
      {1, "partition reproduction", partitions, 1.0},
      {2, "false-positive formula", fpp_pinning},
      {3, "security calculator", security_calculator},
      {4, "completeness", completeness, 120.0},
      {5, "forgery rejection", forgery_rejection},
      {6, "differential equivalence", differential},
      {7, "weak-message handling", weak_messages},
      {8, "size claims", sizes},
      {9, "performance ratios", performance, 300.0},
      {10, "structural cost model", cost_model},
  };
  int failures = 0;
  // Optional arguments select criteria by number; all run by default.
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  std::size_t ran = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += fmt(" (exceeded %.0f s limit)", c.limit_s);
    }
    failures += !o.pass;
    std::printf("%s  criterion %2d  %-26s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(ran) - failures, ran);
  return failures == 0 ? 0 : 1;
}
