#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <thread>
#include <tuple>

#include "tvpd/errors.hpp"
#include "tvpd/hors.hpp"
#include "tvpd/params.hpp"
#include "tvpd/tvpd_hors.hpp"

namespace tvpd::tools {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::micro>(b - a).count();
}

// Keeps the optimizer from discarding a verification result.
std::atomic<std::size_t> g_sink{0};

struct Samples {
  std::vector<double> kg, sign, verify;
};

struct Prepared {
  Seed seed;
  Bytes message;
};

Prepared next_input(std::mt19937_64& rng, std::size_t message_size) {
  Prepared in;
  for (auto& b : in.seed) b = static_cast<std::uint8_t>(rng());
  in.message.resize(message_size);
  for (auto& b : in.message) b = static_cast<std::uint8_t>(rng());
  return in;
}

// One trial runs the same phase for both schemes back to back (keygen,
// then sign, then verify), so every timed operation follows the same mix of
// preceding work. `hors_first` alternates between trials. Sign and verify
// are timed on a second, identical call so both schemes are measured with
// warm caches.
void run_trial(const SchemeParams& params, const Prepared& in, const tvpd::Clock& wall, bool hors_first,
               Samples* hors, Samples* tvpd) {
  std::optional<HorsKeyPair> hk;
  std::optional<TvpdKeyPair> tk;
  Signature hs, ts;
  double h_kg = 0, h_sign = 0, h_ver = 0, t_kg = 0, t_sign = 0, t_ver = 0;

  const auto hors_kg = [&] {
    const auto t0 = Clock::now();
    hk.emplace(hors_keygen(params, in.seed));
    h_kg = elapsed_us(t0, Clock::now());
  };
  const auto tvpd_kg = [&] {
    const auto t0 = Clock::now();
    tk.emplace(tvpd_keygen(params, in.seed, wall));
    t_kg = elapsed_us(t0, Clock::now());
  };
  const auto hors_sg = [&] {
    hs = hors_sign(hk->sk, in.message);
    const auto t0 = Clock::now();
    hs = hors_sign(hk->sk, in.message);
    h_sign = elapsed_us(t0, Clock::now());
  };
  const auto tvpd_sg = [&] {
    ts = tvpd_sign(tk->sk, in.message, wall);
    const auto t0 = Clock::now();
    ts = tvpd_sign(tk->sk, in.message, wall);
    t_sign = elapsed_us(t0, Clock::now());
  };
  bool h_ok = false, t_ok = false;
  const auto hors_vf = [&] {
    g_sink += hors_verify(hk->pk, params, in.message, hs);
    const auto t0 = Clock::now();
    h_ok = hors_verify(hk->pk, params, in.message, hs);
    h_ver = elapsed_us(t0, Clock::now());
  };
  const auto tvpd_vf = [&] {
    g_sink += tvpd_verify(tk->pk, tk->params(), in.message, ts, wall);
    const auto t0 = Clock::now();
    t_ok = tvpd_verify(tk->pk, tk->params(), in.message, ts, wall);
    t_ver = elapsed_us(t0, Clock::now());
  };

  if (hors_first) {
    hors_kg(), tvpd_kg(), hors_sg(), tvpd_sg(), hors_vf(), tvpd_vf();
  } else {
    tvpd_kg(), hors_kg(), tvpd_sg(), hors_sg(), tvpd_vf(), hors_vf();
  }
  g_sink += h_ok + t_ok;
  if (!h_ok) throw Error("HORS benchmark signature failed to verify");
  if (!t_ok) throw Error("TVPD-HORS benchmark signature failed to verify");
  for (auto [out, kg, sign, ver] : {std::tuple{hors, h_kg, h_sign, h_ver}, std::tuple{tvpd, t_kg, t_sign, t_ver}}) {
    if (!out) continue;
    out->kg.push_back(kg);
    out->sign.push_back(sign);
    out->verify.push_back(ver);
  }
}

BenchRecord make_record(const char* scheme, const SchemeParams& params, int variant, Samples& s) {
  BenchRecord r;
  r.scheme = scheme;
  r.kappa = params.kappa;
  r.variant = variant;
  r.t = params.t;
  r.k = params.k;
  r.l = params.l;
  r.p = params.p;
  r.kg_us = median(s.kg);
  r.sign_us = median(s.sign);
  r.verify_us = median(s.verify);
  r.trials = s.kg.size();
  r.sig_bytes = 4 + std::size_t{params.k} * params.element_bytes();
  return r;
}

}  // namespace

std::vector<std::pair<int, int>> default_bench_presets() {
  std::vector<std::pair<int, int>> out;
  for (const PresetInfo& row : preset_table()) out.emplace_back(row.kappa, row.variant);
  return out;
}

double median(std::vector<double> samples) {
  if (samples.empty()) return 0;
  const std::size_t mid = samples.size() / 2;
  std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
  const double upper = samples[mid];
  if (samples.size() % 2 == 1) return upper;
  const double lower = *std::max_element(samples.begin(), samples.begin() + mid);
  return (lower + upper) / 2;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  if (config.trials < 100) throw InvalidParams("benchmarks need at least 100 trials");
  std::mt19937_64 rng(config.rng_seed);
  const FixedClock wall(0);
  std::vector<BenchRecord> records;
  for (const auto& [kappa, variant] : config.presets) {
    const SchemeParams params = preset(kappa, variant, HorsFamily::kSha2);
    Samples hors, tvpd;
    for (std::size_t i = 0; i < config.warmup + config.trials; ++i) {
      const Prepared in = next_input(rng, config.message_size);
      const bool keep = i >= config.warmup;
      run_trial(params, in, wall, i % 2 == 0, keep ? &hors : nullptr, keep ? &tvpd : nullptr);
    }
    BenchRecord h = make_record("HORS", params, variant, hors);
    BenchRecord v = make_record("TVPD-HORS", params, variant, tvpd);
    h.pk_bytes = std::size_t{params.t} * output_bytes(params.one_way);
    v.pk_bytes = params.plan->total_bytes();
    const auto ratio = [](double a, double b) { return b > 0 ? a / b : 0.0; };
    for (BenchRecord* r : {&h, &v}) {
      r->kg_ratio = ratio(h.kg_us, v.kg_us);
      r->sign_ratio = ratio(h.sign_us, v.sign_us);
      r->verify_ratio = ratio(h.verify_us, v.verify_us);
    }
    records.push_back(std::move(h));
    records.push_back(std::move(v));
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(3);
  for (const BenchRecord& r : records) {
    out << r.scheme << ',' << r.kappa << ',' << r.t << ',' << r.k << ',' << r.l << ',' << r.p << ',' << r.kg_us << ','
        << r.sign_us << ',' << r.verify_us << ',' << r.pk_bytes << ',' << r.sig_bytes << ',' << r.trials << ','
        << r.kg_ratio << ',' << r.sign_ratio << ',' << r.verify_ratio << '\n';
  }
  out.flags(flags);
}

void write_markdown(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "| scheme | kappa | (t,k,l,p) | Kg (us) | Sign (us) | Ver (us) | PK (KB) | Sig (B) | Kg x | Sign x | Ver x |\n"
      << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  const auto flags = out.flags();
  out << std::fixed;
  for (const BenchRecord& r : records) {
    out << "| " << r.scheme << " | " << r.kappa << " | (" << r.t << "," << r.k << "," << r.l << "," << r.p << ") | "
        << std::setprecision(2) << r.kg_us << " | " << r.sign_us << " | " << r.verify_us << " | "
        << r.pk_bytes / 1024.0 << " | " << r.sig_bytes << " | " << r.kg_ratio << " | " << r.sign_ratio << " | "
        << r.verify_ratio << " |\n";
  }
  out.flags(flags);
}

ParallelVerifyResult parallel_verify(int kappa, int variant, unsigned threads, std::size_t count,
                                     std::size_t message_size, std::uint64_t rng_seed) {
  if (threads == 0) threads = 1;
  std::mt19937_64 rng(rng_seed);
  const FixedClock wall(0);
  Seed seed{};
  for (auto& b : seed) b = static_cast<std::uint8_t>(rng());
  const TvpdKeyPair kp = tvpd_keygen(preset(kappa, variant), seed, wall);

  // One-time keys: a real deployment signs once, here the same key signs many
  // messages purely to have distinct verification inputs.
  std::vector<Bytes> messages(count);
  std::vector<Signature> sigs(count);
  for (std::size_t i = 0; i < count; ++i) {
    messages[i].resize(message_size);
    for (auto& b : messages[i]) b = static_cast<std::uint8_t>(rng());
    sigs[i] = tvpd_sign(kp.sk, messages[i], wall);
  }

  std::atomic<std::size_t> accepted{0};
  const auto start = Clock::now();
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        std::size_t local = 0;
        for (std::size_t i = w; i < count; i += threads) {
          local += tvpd_verify(kp.pk, kp.params(), messages[i], sigs[i], wall);
        }
        accepted += local;
      });
    }
  }
  const auto stop = Clock::now();

  ParallelVerifyResult r;
  r.threads = threads;
  r.verifications = count;
  r.accepted = accepted.load();
  r.wall_us = elapsed_us(start, stop);
  r.us_per_verify = count ? r.wall_us / static_cast<double>(count) : 0;
  return r;
}

}  // namespace tvpd::tools
