#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tvpd::tools {

struct BenchConfig {
  std::vector<std::pair<int, int>> presets;  // (kappa, variant)
  std::size_t message_size = 256;
  std::size_t trials = 100;
  std::size_t warmup = 10;
  std::uint64_t rng_seed = 1;
};

/// Medians of one scheme at one preset. Sizes are payload bytes: the packed
/// filter or t digests for public keys, ctr plus k elements for signatures.
struct BenchRecord {
  std::string scheme;  // "HORS" or "TVPD-HORS"
  int kappa = 0;
  int variant = 1;
  std::uint32_t t = 0, k = 0, l = 0, p = 0;
  double kg_us = 0, sign_us = 0, verify_us = 0;
  std::size_t pk_bytes = 0, sig_bytes = 0;
  std::size_t trials = 0;
  // HORS / TVPD-HORS per operation, identical on both rows of a preset.
  double kg_ratio = 0, sign_ratio = 0, verify_ratio = 0;
};

inline constexpr const char* kCsvHeader =
    "scheme,kappa,t,k,l,p,kg_us,sign_us,verify_us,pk_bytes,sig_bytes,trials,kg_ratio,sign_ratio,verify_ratio";

/// All registry presets, in table order.
std::vector<std::pair<int, int>> default_bench_presets();

/// For every preset, runs interleaved HORS and TVPD-HORS trials on identical
/// seeds and messages and returns two records. Throws InvalidParams when
/// trials < 100.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

double median(std::vector<double> samples);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_markdown(std::ostream& out, const std::vector<BenchRecord>& records);

struct ParallelVerifyResult {
  unsigned threads = 0;
  std::size_t verifications = 0;
  std::size_t accepted = 0;
  double wall_us = 0;
  double us_per_verify = 0;
};

/// Verifies `count` signatures under one shared public key from `threads`
/// threads at once.
ParallelVerifyResult parallel_verify(int kappa, int variant, unsigned threads, std::size_t count,
                                     std::size_t message_size, std::uint64_t rng_seed);

}  // namespace tvpd::tools
