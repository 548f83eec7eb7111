#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>

#include "bench.hpp"
#include "tvpd/errors.hpp"
#include "tvpd/params.hpp"
#include "tvpd/wire.hpp"

namespace tvpd::tools {

namespace {

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("short write to " + path);
}

Seed parse_seed(const std::string& hex) {
  Bytes raw;
  try {
    raw = from_hex(hex);
  } catch (const std::invalid_argument&) {
    throw Error("seed must be 64 hex characters");
  }
  if (raw.size() != 32) throw Error("seed must be 64 hex characters");
  Seed s{};
  std::copy(raw.begin(), raw.end(), s.begin());
  return s;
}

HorsFamily parse_family(const std::string& name) {
  if (name == "sha2") return HorsFamily::kSha2;
  if (name == "blake2") return HorsFamily::kBlake2;
  throw Error("family must be sha2 or blake2");
}

std::unique_ptr<tvpd::Clock> make_clock(const std::optional<std::uint64_t>& now) {
  if (now) return std::make_unique<FixedClock>(*now);
  return std::make_unique<SystemClock>();
}

void print_report(std::ostream& out, const SchemeParams& params) {
  const SecurityReport r = security_report(params);
  out << std::fixed << std::setprecision(2) << "security: kappa=" << r.kappa << " (subset " << r.hors_subset_bits
      << ", truncated H " << r.trunc_hash_bits << ", h " << r.ohbf_hash_bits << ", fpp " << r.fpp_bits << ")\n";
  out.unsetf(std::ios::floatfield);
}

void print_params(std::ostream& out, const SchemeParams& params, int variant) {
  out << "kappa=" << params.kappa << " variant=" << variant << " t=" << params.t << " k=" << params.k
      << " l=" << params.l << " p=" << params.p << " H=" << algo_name(params.message_hash)
      << " f=" << algo_name(params.one_way) << " h=" << algo_name(params.filter_hash)
      << " pk_bytes=" << params.plan->total_bytes() << " sig_bytes=" << 4 + params.k * params.element_bytes()
      << " time_valid=" << (params.time_valid ? "yes" : "no") << '\n';
  out << "plan:";
  for (std::uint32_t n : params.plan->sizes()) out << ' ' << n;
  out << '\n';
  print_report(out, params);
}

// Signature parameters must name the same scheme instance as the key.
bool same_instance(const SchemeParams& key, const SchemeParams& sig) {
  return key.t == sig.t && key.k == sig.k && key.l == sig.l && key.message_hash == sig.message_hash;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-valid one-time signatures with a Bloom filter public key"};
  app.require_subcommand(1);

  // params
  auto* cmd_params = app.add_subcommand("params", "Show preset parameters and their security levels");
  std::optional<int> p_kappa;
  int p_variant = 1;
  std::string p_family = "sha2";
  cmd_params->add_option("--kappa", p_kappa, "Security level (all presets when omitted)");
  cmd_params->add_option("--variant", p_variant, "Preset variant");
  cmd_params->add_option("--family", p_family, "One-way function family: sha2 or blake2");

  // keygen
  auto* cmd_keygen = app.add_subcommand("keygen", "Generate a key pair");
  int kg_kappa = 32;
  int kg_variant = 1;
  std::string kg_scheme = "tvpd";
  std::string kg_family = "sha2";
  std::string kg_out;
  std::string kg_seed;
  std::optional<std::uint64_t> kg_now;
  std::uint64_t kg_window = kDefaultTimeDelta;
  cmd_keygen->add_option("--kappa", kg_kappa, "Security level")->required();
  cmd_keygen->add_option("--variant", kg_variant, "Preset variant");
  cmd_keygen->add_option("--scheme", kg_scheme, "tvpd or hors")->check(CLI::IsMember({"tvpd", "hors"}));
  cmd_keygen->add_option("--family", kg_family, "One-way function family: sha2 or blake2");
  cmd_keygen->add_option("--out", kg_out, "Output path prefix")->required();
  cmd_keygen->add_option("--seed", kg_seed, "64 hex characters (else $TVPD_SEED, else random)");
  cmd_keygen->add_option("--now", kg_now, "Start of the validity window, seconds since the epoch");
  cmd_keygen->add_option("--window", kg_window, "Validity window length in seconds");

  // sign
  auto* cmd_sign = app.add_subcommand("sign", "Sign a message file");
  std::string s_sk, s_msg, s_out;
  std::optional<std::uint64_t> s_now;
  cmd_sign->add_option("--sk", s_sk, "Secret key file")->required();
  cmd_sign->add_option("--message", s_msg, "Message file")->required();
  cmd_sign->add_option("--out", s_out, "Signature output file")->required();
  cmd_sign->add_option("--now", s_now, "Override the current time");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Verify a signature");
  std::string v_pk, v_msg, v_sig;
  std::optional<std::uint64_t> v_now;
  cmd_verify->add_option("--pk", v_pk, "Public key file")->required();
  cmd_verify->add_option("--message", v_msg, "Message file")->required();
  cmd_verify->add_option("--sig", v_sig, "Signature file")->required();
  cmd_verify->add_option("--now", v_now, "Override the current time");

  // bench
  auto* cmd_bench = app.add_subcommand("bench", "Compare HORS and TVPD-HORS timings");
  std::vector<int> b_kappas;
  BenchConfig b_cfg;
  std::string b_csv, b_md;
  unsigned b_parallel = 0;
  std::size_t b_parallel_count = 1000;
  cmd_bench->add_option("--kappa", b_kappas, "Security levels (all variants of each); default all presets");
  cmd_bench->add_option("--trials", b_cfg.trials, "Measured trials per preset (at least 100)");
  cmd_bench->add_option("--warmup", b_cfg.warmup, "Discarded warm-up trials");
  cmd_bench->add_option("--message-size", b_cfg.message_size, "Message length in bytes");
  cmd_bench->add_option("--seed", b_cfg.rng_seed, "RNG seed for keys and messages");
  cmd_bench->add_option("--csv", b_csv, "Write CSV here instead of stdout");
  cmd_bench->add_option("--markdown", b_md, "Also write a markdown table here");
  cmd_bench->add_option("--parallel-verify", b_parallel, "Also run concurrent verification with N threads");
  cmd_bench->add_option("--parallel-count", b_parallel_count, "Signatures verified in the concurrent run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*cmd_params) {
      const HorsFamily fam = parse_family(p_family);
      if (p_kappa) {
        print_params(out, preset(*p_kappa, p_variant, fam), p_variant);
      } else {
        for (const PresetInfo& row : preset_table()) print_params(out, preset(row.kappa, row.variant, fam), row.variant);
      }
      return kExitOk;
    }

    if (*cmd_keygen) {
      SchemeParams params = preset(kg_kappa, kg_variant, parse_family(kg_family));
      Seed seed{};
      if (!kg_seed.empty()) {
        seed = parse_seed(kg_seed);
      } else if (const char* env = std::getenv("TVPD_SEED"); env && *env) {
        seed = parse_seed(env);
      } else {
        seed = generate_seed();
      }
      const auto clock = make_clock(kg_now);
      Bytes pk, sk;
      if (kg_scheme == "hors") {
        params.time_valid = false;
        const HorsKeyPair kp = hors_keygen(params, seed);
        pk = wire::encode_hors_public(kp);
        sk = wire::encode_secret(kp.sk);
      } else {
        if (params.time_valid) params.time_policy = TimePolicy{clock->now(), kg_window};
        const TvpdKeyPair kp = tvpd_keygen(params, seed, *clock);
        pk = wire::encode_public(kp);
        sk = wire::encode_secret(kp.sk);
        params = kp.params();
      }
      write_file(kg_out + wire::kSecretExt, sk);
      write_file(kg_out + wire::kPublicExt, pk);
      out << "wrote " << kg_out << wire::kSecretExt << " (" << sk.size() << " bytes) and " << kg_out
          << wire::kPublicExt << " (" << pk.size() << " bytes)\n";
      print_params(out, params, kg_variant);
      if (params.time_policy) {
        out << "valid from " << params.time_policy->t0 << " for " << params.time_policy->t_delta << " s\n";
      }
      return kExitOk;
    }

    if (*cmd_sign) {
      const SecretKey sk = wire::decode_secret(read_file(s_sk));
      const Bytes message = read_file(s_msg);
      const auto clock = make_clock(s_now);
      Signature sig;
      try {
        sig = tvpd_sign(sk, message, *clock);
      } catch (const OutsideTimeWindow& e) {
        err << "REJECT: " << e.what() << '\n';
        return kExitOutsideWindow;
      }
      const Bytes encoded = wire::encode_signature(sk.params(), sig);
      write_file(s_out, encoded);
      out << "wrote " << s_out << " (" << encoded.size() << " bytes, ctr=" << sig.ctr << ")\n";
      return kExitOk;
    }

    if (*cmd_verify) {
      const Bytes pk_bytes = read_file(v_pk);
      const wire::DecodedSignature ds = wire::decode_signature(read_file(v_sig));
      const Bytes message = read_file(v_msg);
      const auto clock = make_clock(v_now);
      VerifyStatus status = VerifyStatus::kReject;
      if (wire::peek_kind(pk_bytes) == wire::Kind::kHorsPublic) {
        const wire::DecodedHorsPublic pk = wire::decode_hors_public(pk_bytes);
        if (same_instance(pk.params, ds.params) && hors_verify(pk.pk, pk.params, message, ds.sig)) {
          status = VerifyStatus::kAccept;
        }
      } else {
        const wire::DecodedPublic pk = wire::decode_public(pk_bytes);
        if (same_instance(pk.params, ds.params)) {
          status = tvpd_verify_status(pk.filter, pk.params, message, ds.sig, *clock);
        } else if (pk.params.time_policy && !pk.params.time_policy->contains(clock->now())) {
          status = VerifyStatus::kOutsideWindow;
        }
      }
      switch (status) {
        case VerifyStatus::kAccept:
          out << "ACCEPT\n";
          return kExitOk;
        case VerifyStatus::kOutsideWindow:
          out << "REJECT: outside the key's validity window\n";
          return kExitOutsideWindow;
        case VerifyStatus::kReject:
          break;
      }
      out << "REJECT\n";
      return kExitReject;
    }

    if (*cmd_bench) {
      if (b_kappas.empty()) {
        b_cfg.presets = default_bench_presets();
      } else {
        for (int kappa : b_kappas) {
          bool found = false;
          for (const PresetInfo& row : preset_table()) {
            if (row.kappa == kappa) {
              b_cfg.presets.emplace_back(row.kappa, row.variant);
              found = true;
            }
          }
          if (!found) throw UnknownPreset("no preset for kappa=" + std::to_string(kappa));
        }
      }
      const std::vector<BenchRecord> records = run_bench(b_cfg);
      if (b_csv.empty()) {
        write_csv(out, records);
      } else {
        std::ofstream csv(b_csv);
        if (!csv) throw Error("cannot write " + b_csv);
        write_csv(csv, records);
      }
      if (!b_md.empty()) {
        std::ofstream md(b_md);
        if (!md) throw Error("cannot write " + b_md);
        write_markdown(md, records);
      }
      if (b_parallel > 0) {
        for (const auto& [kappa, variant] : b_cfg.presets) {
          const ParallelVerifyResult r =
              parallel_verify(kappa, variant, b_parallel, b_parallel_count, b_cfg.message_size, b_cfg.rng_seed);
          err << "parallel verify kappa=" << kappa << " variant=" << variant << " threads=" << r.threads
              << " verified=" << r.verifications << " accepted=" << r.accepted << " wall_us=" << r.wall_us
              << " us_per_verify=" << r.us_per_verify << '\n';
          if (r.accepted != r.verifications) throw Error("concurrent verification rejected a valid signature");
        }
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace tvpd::tools
