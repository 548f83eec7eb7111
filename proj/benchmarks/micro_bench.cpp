#include <benchmark/benchmark.h>

#include <random>

#include "tvpd/hors.hpp"
#include "tvpd/ohbf.hpp"
#include "tvpd/params.hpp"
#include "tvpd/tvpd_hors.hpp"

namespace {

using namespace tvpd;

Bytes message(std::size_t n, std::uint64_t seed = 42) {
  std::mt19937_64 rng(seed);
  Bytes m(n);
  for (auto& b : m) b = static_cast<std::uint8_t>(rng());
  return m;
}

Seed fixed_seed() {
  Seed s{};
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(i * 7 + 1);
  return s;
}

void BM_Digest(benchmark::State& state) {
  const auto algo = static_cast<HashAlgo>(state.range(0));
  const Bytes m = message(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(digest(algo, m));
  state.SetLabel(std::string(algo_name(algo)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(1));
}
BENCHMARK(BM_Digest)->ArgsProduct({{1, 2, 3, 4, 5, 6, 7, 8}, {8, 36, 256}});

void BM_OhbfCheck(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  OhbfFilter filter(*params.plan, params.filter_hash);
  const Bytes element = message(params.element_bytes() + 4);
  filter.insert(element);
  for (auto _ : state) benchmark::DoNotOptimize(filter.check(element));
}
BENCHMARK(BM_OhbfCheck)->Args({32, 1})->Args({48, 1})->Args({64, 1})->Args({64, 2})->Args({128, 1})->Args({128, 2});

void BM_HorsKeygen(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hors_keygen(params, fixed_seed()));
}
BENCHMARK(BM_HorsKeygen)->Args({32, 1})->Args({128, 1})->Unit(benchmark::kMicrosecond);

void BM_TvpdKeygen(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const FixedClock clock(0);
  for (auto _ : state) benchmark::DoNotOptimize(tvpd_keygen(params, fixed_seed(), clock));
}
BENCHMARK(BM_TvpdKeygen)->Args({32, 1})->Args({128, 1})->Unit(benchmark::kMicrosecond);

void BM_HorsVerify(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const HorsKeyPair kp = hors_keygen(params, fixed_seed());
  const Bytes m = message(256);
  const Signature sig = hors_sign(kp, m);
  for (auto _ : state) benchmark::DoNotOptimize(hors_verify(kp.pk, params, m, sig));
}
BENCHMARK(BM_HorsVerify)->Args({32, 1})->Args({48, 1})->Args({64, 1})->Args({128, 1});

void BM_TvpdVerify(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const FixedClock clock(0);
  const TvpdKeyPair kp = tvpd_keygen(params, fixed_seed(), clock);
  const Bytes m = message(256);
  const Signature sig = tvpd_sign(kp.sk, m, clock);
  for (auto _ : state) benchmark::DoNotOptimize(tvpd_verify(kp.pk, kp.params(), m, sig, clock));
}
BENCHMARK(BM_TvpdVerify)->Args({32, 1})->Args({48, 1})->Args({64, 1})->Args({128, 1});

void BM_Sign(benchmark::State& state) {
  const SchemeParams params = preset(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const HorsKeyPair kp = hors_keygen(params, fixed_seed());
  std::uint64_t i = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const Bytes m = message(256, ++i);
    state.ResumeTiming();
    benchmark::DoNotOptimize(hors_sign(kp, m));
  }
}
BENCHMARK(BM_Sign)->Args({32, 1})->Args({128, 1});

}  // namespace

BENCHMARK_MAIN();
