/*
 * Copyright (C) 2026 The k1guard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "k1guard/cycle_model.hpp"
#include "k1guard/datapath.hpp"
#include "k1guard/error.hpp"
#include "k1guard/ladder.hpp"
#include "k1guard/sca.hpp"
#include "k1guard/text.hpp"

namespace k1guard::cli {
namespace {

// Thrown for argument problems the parser cannot see (bad hex, bad mode
// combination). Maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scalar256 parse_scalar(const std::string& hex) {
  try {
    return Scalar256::from_hex(hex);
  } catch (const Error& e) {
    throw UsageError("--scalar: " + std::string(e.what()));
  }
}

std::vector<Scalar256> random_scalars(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Scalar256> out;
  for (std::size_t i = 0; i < count; ++i) {
    U256 bits;
    for (auto& limb : bits.limb) limb = rng();
    bits.set_bit(255);
    out.push_back(Scalar256::from_u256(bits));
  }
  return out;
}

Design parse_design(const std::string& name) {
  if (name == "hardened") return Design::Hardened;
  if (name == "baseline") return Design::Baseline;
  throw UsageError("--design must be hardened or baseline");
}

CycleConfig config_from(const std::string& path) {
  if (path.empty()) return CycleConfig::defaults();
  try {
    return load_cycle_config(path);
  } catch (const Error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
}

std::uint64_t frequency_hz_from_mhz(double mhz) {
  if (!(mhz > 0.0) || !std::isfinite(mhz)) throw UsageError("--freq must be positive");
  auto hz = static_cast<std::uint64_t>(std::llround(mhz * 1e6));
  if (hz == 0) throw UsageError("--freq must be positive");
  return hz;
}

std::string join_bits(const std::vector<unsigned>& bits) {
  if (bits.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(bits[i]);
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

// --- derive -----------------------------------------------------------------

int cmd_derive(const std::string& scalar_hex, std::ostream& out) {
  Scalar256 k = parse_scalar(scalar_hex);
  PublicKeyEncoding key = derive_pubkey(k);
  out << "public_key: " << pubkey_to_hex(key) << '\n';
  out << "bit_length: " << k.bit_length() << '\n';
  return kExitOk;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& scalar_hex, double freq_mhz, const std::string& config,
                 const std::string& design, std::ostream& out) {
  Scalar256 k = parse_scalar(scalar_hex);
  SimOptions options;
  options.frequency_hz = frequency_hz_from_mhz(freq_mhz);
  options.design = parse_design(design);
  CycleConfig cfg = config_from(config);

  SimulationResult sim = simulate_scalar_mul(k, generator(), cfg, options);
  const CycleReport& r = sim.report;
  out << "design: " << to_string(options.design) << '\n';
  out << "bit_length: " << k.bit_length() << '\n';
  out << "ladder_iterations: " << sim.cycles.ladder_iterations << '\n';
  out << "total_cycles: " << r.total_cycles << '\n';
  out << "kcc: " << format_shortest(round_significant(r.total_cycles / 1000.0, 3)) << '\n';
  out << "init_cycles: " << sim.cycles.init << '\n';
  out << "ladder_cycles: " << sim.cycles.ladder << '\n';
  out << "inversion_cycles: " << sim.cycles.inversion << '\n';
  out << "finalize_cycles: " << sim.cycles.finalize << '\n';
  out << "bia_steps: " << sim.cycles.bia_steps << '\n';
  out << "frequency_mhz: " << format_shortest(r.frequency_hz / 1e6) << '\n';
  out << "latency_ms: " << format_fixed(r.latency_seconds * 1e3, 3) << '\n';
  out << "throughput_kbps: " << format_fixed(r.throughput_bps / 1e3, 2) << '\n';
  if (sim.affine.infinity) {
    out << "result: infinity\n";
  } else {
    out << "affine_x: " << sim.affine.x.to_hex() << '\n';
    out << "affine_y: " << sim.affine.y.to_hex() << '\n';
  }
  return kExitOk;
}

// --- trace ------------------------------------------------------------------

int cmd_trace(const std::string& scalar_hex, const std::string& design,
              const std::string& config, const std::string& out_path, bool digest_only,
              std::ostream& out) {
  Scalar256 k = parse_scalar(scalar_hex);
  SimOptions options;
  options.design = parse_design(design);
  SimulationResult sim = simulate_scalar_mul(k, generator(), config_from(config), options);
  ShapeDigest shape = trace_shape(sim.trace);

  if (!digest_only && out_path.empty()) {
    write_trace(out, sim.trace);
    return kExitOk;
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw UsageError("--out: cannot open " + out_path);
    write_trace(file, sim.trace);
    out << "trace_file: " << out_path << '\n';
  }
  out << "design: " << to_string(options.design) << '\n';
  out << "events: " << sim.trace.size() << '\n';
  out << "total_cycles: " << sim.report.total_cycles << '\n';
  out << "shape_fingerprint: " << hex64(shape.fingerprint()) << '\n';
  if (digest_only) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string bytes;
    for (std::uint8_t b : shape.bytes()) {
      bytes.push_back(kDigits[b >> 4]);
      bytes.push_back(kDigits[b & 0xF]);
    }
    out << "shape_digest: " << bytes << '\n';
  }
  return kExitOk;
}

// --- sca --------------------------------------------------------------------

struct ScaArgs {
  std::string mode;
  std::vector<std::string> scalars;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  std::string scalar;
  std::size_t trials = 0;
  double sigma = 1.0;
  double threshold = 4.5;
  std::string channel = "slot";
  std::string design = "hardened";
  bool verbose = false;
};

std::vector<Scalar256> scalar_list(const ScaArgs& a) {
  std::vector<Scalar256> out;
  for (const auto& hex : a.scalars) out.push_back(parse_scalar(hex));
  if (out.empty() && a.count > 0) out = random_scalars(a.count, a.seed);
  if (out.empty()) throw UsageError("--mode " + a.mode + " needs --scalars or --count");
  return out;
}

int cmd_sca(const ScaArgs& a, std::ostream& out) {
  const ProjectivePoint g = generator();

  if (a.mode == "uniform") {
    std::vector<Scalar256> ks = scalar_list(a);
    UniformityReport r;
    try {
      r = assert_uniform_shapes(ks, g);
    } catch (const Error& e) {
      if (e.code() == Errc::IncomparableTraces) throw UsageError(e.what());
      throw;
    }
    out << "mode: uniform\n";
    out << "scalars: " << ks.size() << '\n';
    out << "shape_events: " << r.reference.size() << '\n';
    out << "shape_fingerprint: " << hex64(r.reference.fingerprint()) << '\n';
    if (!r.uniform) {
      out << "divergent_scalar: " << *r.divergent_scalar << '\n';
      out << "first_divergence: " << *r.first_divergence << '\n';
    }
    out << "result: " << (r.uniform ? "pass" : "fail") << '\n';
    return r.uniform ? kExitOk : kExitFailure;
  }

  if (a.mode == "contrast") {
    std::vector<Scalar256> ks = scalar_list(a);
    if (ks.size() < 2) throw UsageError("--mode contrast needs at least two scalars");
    DivergenceSummary s;
    try {
      s = contrast_baseline(ks, g);
    } catch (const Error& e) {
      if (e.code() == Errc::IncomparableTraces) throw UsageError(e.what());
      throw;
    }
    bool any_difference = false;
    for (const auto& k : ks) any_difference |= !(k == ks.front());
    out << "mode: contrast\n";
    out << "scalars: " << ks.size() << '\n';
    out << "iterations: " << s.patterns.front().size() << '\n';
    out << "divergences: " << s.divergent_bits.size() << '\n';
    out << "divergent_bits: " << join_bits(s.divergent_bits) << '\n';
    bool consistent = !any_difference || !s.divergent_bits.empty();
    out << "result: " << (consistent ? "pass" : "fail") << '\n';
    return consistent ? kExitOk : kExitFailure;
  }

  if (a.mode == "ttest") {
    if (a.scalar.empty()) throw UsageError("--mode ttest needs --scalar");
    if (a.trials == 0) throw UsageError("--mode ttest needs --trials");
    TTestOptions opts;
    opts.seed = a.seed;
    opts.threshold = a.threshold;
    opts.design = parse_design(a.design);
    if (a.channel == "slot") {
      opts.channel = LeakageChannel::OperationSlot;
    } else if (a.channel == "data") {
      opts.channel = LeakageChannel::DataValue;
    } else {
      throw UsageError("--channel must be slot or data");
    }
    LeakageReport r;
    try {
      r = welch_ttest(parse_scalar(a.scalar), a.trials, a.sigma, opts);
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidInput) throw UsageError(e.what());
      throw;
    }
    if (a.verbose) {
      write_leakage_report(out, r);
    } else {
      out << "mode: ttest\n";
      out << "design: " << to_string(r.design) << '\n';
      out << "channel: " << to_string(r.channel) << '\n';
      out << "trials: " << r.trials << '\n';
      out << "samples: " << r.t_statistics.size() << '\n';
      out << "max_abs_t: " << format_fixed(r.max_abs_t, 4) << '\n';
      out << "threshold: " << format_shortest(r.threshold) << '\n';
      out << "summary: " << leakage_summary(r) << '\n';
      out << "result: " << (r.pass ? "pass" : "fail") << '\n';
    }
    return r.pass ? kExitOk : kExitFailure;
  }

  throw UsageError("--mode must be uniform, contrast or ttest");
}

// --- selftest ---------------------------------------------------------------

constexpr std::uint64_t kReferenceCycles = 1'895'000;

struct KnownVector {
  std::uint64_t k;
  const char* pubkey;
};

// k*G for small k, uncompressed.
constexpr KnownVector kVectors[] = {
    {1,
     "0479be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"
     "483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8"},
    {2,
     "04c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5"
     "1ae168fea63dc339a3c58419466ceaeef7f632653266d0e1236431a950cfe52a"},
    {3,
     "04f9308a019258c31049344f85f89d5229b531c845836f99b08601f113bce036f9"
     "388f7b0f632de8140fe337e62a37f3566500a99934c2231b6cb9fd7584b8e672"},
};

}  // namespace

int run_selftest(std::ostream& out, const SelftestOptions& options) {
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    out << name << ": " << (ok ? "pass" : "fail") << '\n';
    all = all && ok;
  };

  CycleReport fast = cycle_report(kReferenceCycles, 250'000'000);
  double fast_ms = fast.latency_seconds * 1e3;
  double fast_kbps = round_significant(fast.throughput_bps / 1e3, 2);
  out << "report_250mhz_latency_ms: " << format_fixed(fast_ms, 3) << '\n';
  out << "report_250mhz_throughput_kbps: " << format_shortest(fast_kbps) << '\n';
  check("report_250mhz", std::fabs(fast_ms - 7.58) <= 0.01 && fast_kbps == 34.0);

  CycleReport slow = cycle_report(kReferenceCycles, 90'000'000);
  double slow_ms = round_significant(slow.latency_seconds * 1e3, 2);
  double slow_kbps = round_significant(slow.throughput_bps / 1e3, 2);
  out << "report_90mhz_latency_ms: " << format_shortest(slow_ms) << '\n';
  out << "report_90mhz_throughput_kbps: " << format_shortest(slow_kbps) << '\n';
  check("report_90mhz", slow_ms == 21.0 && slow_kbps == 12.0);

  ProjectivePoint g = from_affine(options.generator.value_or(generator_affine()));
  for (const KnownVector& v : kVectors) {
    bool ok = false;
    try {
      AffinePoint a = to_affine(scalar_mul_hardened(Scalar256::from_u64(v.k), g));
      ok = !a.infinity && pubkey_to_hex(encode_pubkey(a)) == v.pubkey;
    } catch (const Error&) {
      ok = false;
    }
    check("vector_k" + std::to_string(v.k), ok);
  }

  out << "result: " << (all ? "pass" : "fail") << '\n';
  return all ? kExitOk : kExitFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Side-channel hardened SECP256K1 ladder: keys, datapath simulation, SCA checks",
               "k1guard"};
  app.require_subcommand(1);

  std::string scalar, config, design = "hardened", out_path;
  double freq_mhz = 0.0;
  bool digest_only = false;

  auto* derive = app.add_subcommand("derive", "Derive the uncompressed public key k*G");
  derive->add_option("--scalar", scalar, "64 hex digits")->required();

  auto* simulate = app.add_subcommand("simulate", "Cycle report for one scalar multiplication");
  simulate->add_option("--scalar", scalar, "64 hex digits")->required();
  simulate->add_option("--freq", freq_mhz, "Clock frequency in MHz")->required();
  simulate->add_option("--config", config, "CycleConfig key=value file");
  simulate->add_option("--design", design, "hardened or baseline");

  auto* trace = app.add_subcommand("trace", "Dump the datapath operation trace");
  trace->add_option("--scalar", scalar, "64 hex digits")->required();
  trace->add_option("--design", design, "hardened or baseline");
  trace->add_option("--config", config, "CycleConfig key=value file");
  trace->add_option("--out", out_path, "Write the trace to this file");
  trace->add_flag("--digest", digest_only, "Print the shape digest instead of the trace");

  ScaArgs sca_args;
  auto* sca = app.add_subcommand("sca", "Trace uniformity, baseline contrast, Welch t-test");
  sca->add_option("--mode", sca_args.mode, "uniform, contrast or ttest")->required();
  sca->add_option("--scalars", sca_args.scalars, "Comma-separated 64-digit hex scalars")
      ->delimiter(',');
  sca->add_option("--count", sca_args.count, "Number of seeded random 256-bit scalars");
  sca->add_option("--seed", sca_args.seed, "Seed for random scalars and noise");
  sca->add_option("--scalar", sca_args.scalar, "Fixed scalar for the t-test");
  sca->add_option("--trials", sca_args.trials, "Traces per t-test group (>= 100)");
  sca->add_option("--sigma", sca_args.sigma, "Gaussian noise standard deviation");
  sca->add_option("--threshold", sca_args.threshold, "|t| threshold");
  sca->add_option("--channel", sca_args.channel, "slot or data");
  sca->add_option("--design", sca_args.design, "hardened or baseline");
  sca->add_flag("--verbose", sca_args.verbose, "Print every t statistic");

  auto* selftest = app.add_subcommand("selftest", "Latency/throughput arithmetic and known-answer vectors");

  std::vector<const char*> argv;
  argv.push_back("k1guard");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*derive) return cmd_derive(scalar, out);
    if (*simulate) return cmd_simulate(scalar, freq_mhz, config, design, out);
    if (*trace) return cmd_trace(scalar, design, config, out_path, digest_only, out);
    if (*sca) return cmd_sca(sca_args, out);
    if (*selftest) return run_selftest(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::DegenerateKey ? kExitFailure : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace k1guard::cli
