// qromlab: simulate, attack, verify-lemma, sweep.
//
// Exit codes: 0 ok, 1 a lemma suite or grid point failed, 2 bad input
// (spec, scheme, lemma id, flags), 3 internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qromlab/error.hpp"
#include "qromlab/harness/experiment.hpp"
#include "qromlab/harness/lemmas.hpp"
#include "qromlab/harness/report.hpp"
#include "qromlab/protocols/qpke.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace fs = std::filesystem;
using namespace qromlab;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

// --out-dir, then the spec's out_dir, then $QROMLAB_OUT_DIR, then ./qromlab-out.
fs::path output_dir(const std::string& flag, const std::string& from_spec = {}) {
  if (!flag.empty()) return flag;
  if (!from_spec.empty()) return from_spec;
  if (const char* env = std::getenv("QROMLAB_OUT_DIR"); env && *env) return env;
  return "qromlab-out";
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

struct GridFlags {
  std::string spec;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::string out_dir;
  std::optional<unsigned> jobs;
  bool quiet = false;
};

void add_grid_flags(CLI::App* cmd, GridFlags& f) {
  cmd->add_option("--spec", f.spec, "experiment spec (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", f.mode, "override the spec's mode")
      ->check(CLI::IsMember({"exact", "sampled"}));
  cmd->add_option("--seed", f.seed, "override the spec's base seed");
  cmd->add_option("--seeds", f.seeds, "sampled trials per oracle");
  cmd->add_option("--out-dir", f.out_dir, "output directory (default $QROMLAB_OUT_DIR)");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_flag("-q,--quiet", f.quiet, "no per-point progress");
}

int run_grid_command(const GridFlags& f, bool resume) {
  auto spec = harness::load_spec(f.spec);
  if (!f.mode.empty()) spec.mode = attack::attack_mode_from_string(f.mode);
  if (f.seed) spec.seed = *f.seed;
  if (f.seeds) spec.seeds = *f.seeds;
  if (f.jobs) spec.jobs = *f.jobs;
  spec.validate();
  const fs::path out = output_dir(f.out_dir, spec.out_dir);

  harness::GridRunOptions opts;
  opts.resume = resume;
  if (!f.quiet) {
    opts.progress = [](const harness::GridPoint& p, const std::string& status) {
      std::cerr << p.scheme << " n=" << p.n << " eps=" << p.epsilon << ": " << status << '\n';
    };
  }
  const auto report = harness::run_grid(spec, out, opts);
  std::cout << harness::csv_header() << '\n';
  for (const auto& row : report.rows) std::cout << harness::csv_line(row) << '\n';
  std::cerr << report.completed << " completed, " << report.skipped << " skipped, "
            << report.failed << " failed; output in " << out.string() << '\n';
  return report.failed == 0 ? 0 : kExitFailed;
}

struct SimulateFlags {
  std::string scheme = "S1";
  std::string scheme_file;
  int n = 2;
  std::string algorithm = "gen";
  std::string oracle;
  std::string input;
  std::string sk;
};

int run_simulate(const SimulateFlags& f) {
  const auto scheme = f.scheme_file.empty()
                          ? protocols::make_scheme(f.scheme, f.n)
                          : protocols::scheme_from_json(nlohmann::json::parse(std::ifstream(f.scheme_file)));
  const quantum_sim::QueryAlgorithm* alg = nullptr;
  if (f.algorithm == "gen") alg = &scheme.gen;
  else if (f.algorithm == "enc") alg = &scheme.enc;
  else if (f.algorithm == "dec") alg = &scheme.dec;
  else if (f.algorithm == "pkgen" && scheme.pkgen) alg = &*scheme.pkgen;
  else throw InvalidArgument("scheme " + scheme.name + " has no algorithm '" + f.algorithm + "'");

  const auto oracle = f.oracle.empty() ? quantum_sim::Oracle::zero(scheme.n)
                                       : quantum_sim::Oracle::from_bitstring(f.oracle);
  if (oracle.n() != scheme.n) {
    throw DimensionMismatch("oracle has n=" + std::to_string(oracle.n()) + ", scheme has n=" +
                            std::to_string(scheme.n));
  }
  auto input = protocols::classical_input(*alg, f.input);
  if (!alg->spec().quantum_inputs.empty()) {
    // Only the quantum public key can be prepared here.
    if (f.algorithm != "enc" || f.sk.empty()) {
      throw InvalidArgument(alg->name() + " takes a quantum input; pass --sk for enc, dec is not supported");
    }
    input.quantum.push_back(protocols::quantum_public_key(scheme, oracle, f.sk));
  }

  const auto state = quantum_sim::run(*alg, oracle, input);
  nlohmann::json fields = nlohmann::json::object();
  for (const auto& [field, regs] : alg->spec().outputs) {
    nlohmann::json dist = nlohmann::json::object();
    for (const auto& [outcome, p] : quantum_sim::measure(state, regs)) dist[outcome] = p;
    fields[field] = dist;
  }
  nlohmann::json j{{"scheme", scheme.name},
                   {"algorithm", alg->name()},
                   {"n", scheme.n},
                   {"d", alg->d()},
                   {"oracle", oracle.to_bitstring()},
                   {"input", f.input},
                   {"outputs", fields}};
  if (alg->d() > 0) j["query_weights"] = quantum_sim::query_weights(*alg, oracle, input).weights;
  std::cout << harness::rounded(j).dump(2) << '\n';
  return 0;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InvalidArgument("bad --dims entry '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qromlab: QROM key-agreement attack lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qromlab 0.1.0");

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "run one algorithm of a scheme on an oracle");
  simulate->add_option("--scheme", sim.scheme, "built-in scheme name");
  simulate->add_option("--scheme-file", sim.scheme_file, "scheme JSON instead of a built-in")
      ->check(CLI::ExistingFile);
  simulate->add_option("--n", sim.n, "oracle input qubits");
  simulate->add_option("--algorithm", sim.algorithm, "gen | pkgen | enc | dec");
  simulate->add_option("--oracle", sim.oracle, "truth table H(0)H(1)... (default all zero)");
  simulate->add_option("--input", sim.input, "classical input bits");
  simulate->add_option("--sk", sim.sk, "secret key for a quantum-pk enc");

  GridFlags attack_flags;
  auto* attack_cmd = app.add_subcommand("attack", "run the attack over a spec's grid");
  add_grid_flags(attack_cmd, attack_flags);

  GridFlags sweep_flags;
  bool fresh = false;
  auto* sweep = app.add_subcommand("sweep", "resumable grid run; finished rows are skipped");
  add_grid_flags(sweep, sweep_flags);
  sweep->add_flag("--fresh", fresh, "ignore completion markers");

  std::string lemma_id, dims, lemma_out;
  harness::LemmaParams lp;
  auto* verify = app.add_subcommand("verify-lemma", "run a property suite; exit 0 iff it passes");
  verify->add_option("id", lemma_id, "suite id")->required();
  verify->add_option("--N", lp.N, "variables");
  verify->add_option("--trials", lp.trials);
  verify->add_option("--n", lp.n, "oracle input qubits");
  verify->add_option("--d", lp.d, "queries");
  verify->add_option("--m", lp.m);
  verify->add_option("--t", lp.t, "copies");
  verify->add_option("--epsilon", lp.epsilon);
  verify->add_option("--scheme", lp.scheme);
  verify->add_option("--dims", dims, "comma separated, e.g. 2,2,2");
  verify->add_option("--seed", lp.seed);
  verify->add_option("--jobs", lp.jobs);
  verify->add_option("--out-dir", lemma_out, "also write <id>.json here");
  verify->footer(harness::lemma_usage());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*attack_cmd) return run_grid_command(attack_flags, false);
    if (*sweep) return run_grid_command(sweep_flags, !fresh);
    if (*verify) {
      if (!harness::is_lemma_id(lemma_id)) {
        std::cerr << "unknown lemma id '" << lemma_id << "'\n" << harness::lemma_usage();
        return kExitBadInput;
      }
      if (!dims.empty()) lp.dims = parse_dims(dims);
      const auto report = harness::verify_lemma(lemma_id, lp);
      auto j = harness::to_json(report);
      j["policy"] = qromlab::to_json(default_policy());
      j = harness::rounded(j);
      std::cout << j.dump(2) << '\n';
      if (!lemma_out.empty() || std::getenv("QROMLAB_OUT_DIR")) {
        write_json(output_dir(lemma_out) / "lemmas" / (lemma_id + ".json"), j);
      }
      std::cerr << lemma_id << ": " << (report.passed ? "PASS" : "FAIL") << " (" << report.checks
                << " checks, " << report.failures << " failures)\n";
      return report.passed ? 0 : kExitFailed;
    }
  } catch (const harness::SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
