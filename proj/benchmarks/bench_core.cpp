#include <benchmark/benchmark.h>

#include "qromlab/attack/attack.hpp"
#include "qromlab/boolean_poly/acceptance.hpp"
#include "qromlab/boolean_poly/reprogram.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/info_theory/entropy.hpp"
#include "qromlab/info_theory/recovery.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/quantum_sim/simulator.hpp"
#include "qromlab/rng.hpp"

using namespace qromlab;

// args: n, d
static void BM_RunRandomAlgorithm(benchmark::State& st) {
  auto rng = stream_rng(0, 0);
  const int n = static_cast<int>(st.range(0)), d = static_cast<int>(st.range(1));
  const auto alg = harness::random_algorithm(n, 2, d, rng);
  const auto h = harness::random_oracle(n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(quantum_sim::run(alg, h, quantum_sim::AlgorithmInput{}));
}
BENCHMARK(BM_RunRandomAlgorithm)->Args({2, 1})->Args({3, 3})->Args({4, 3});

static void BM_QueryWeights(benchmark::State& st) {
  auto rng = stream_rng(0, 1);
  const auto alg = harness::random_algorithm(3, 2, 3, rng);
  const auto h = harness::random_oracle(3, rng);
  for (auto _ : st) benchmark::DoNotOptimize(quantum_sim::query_weights(alg, h, quantum_sim::AlgorithmInput{}));
}
BENCHMARK(BM_QueryWeights);

static void BM_SchemeEnc(benchmark::State& st) {
  const auto s = protocols::make_scheme("S2", static_cast<int>(st.range(0)));
  const auto h = quantum_sim::Oracle::zero(s.n);
  const std::string input(static_cast<std::size_t>(s.enc.layout().width(s.enc.spec().classical_inputs)), '1');
  for (auto _ : st) benchmark::DoNotOptimize(quantum_sim::run(s.enc, h, input));
}
BENCHMARK(BM_SchemeEnc)->Arg(2)->Arg(3);

static void BM_VonNeumannEntropy(benchmark::State& st) {
  auto rng = stream_rng(0, 2);
  const int qubits = static_cast<int>(st.range(0));
  std::vector<info_theory::System> sys;
  for (int i = 0; i < qubits; ++i) sys.push_back({"Q" + std::to_string(i), 2});
  const auto state = harness::random_multipartite(sys, 4, rng);
  info_theory::Labels half;
  for (int i = 0; i < qubits / 2; ++i) half.push_back(sys[static_cast<std::size_t>(i)].label);
  for (auto _ : st) benchmark::DoNotOptimize(info_theory::von_neumann_entropy(state, half));
}
BENCHMARK(BM_VonNeumannEntropy)->Arg(4)->Arg(6)->Arg(8);

static void BM_PetzRecovery(benchmark::State& st) {
  auto rng = stream_rng(0, 3);
  const auto state = harness::random_multipartite({{"A", 2}, {"E", 4}, {"B", 2}}, 8, rng);
  for (auto _ : st) benchmark::DoNotOptimize(info_theory::evaluate_recovery(state, {"A"}, {"E"}));
}
BENCHMARK(BM_PetzRecovery);

static void BM_WalshHadamard(benchmark::State& st) {
  std::vector<double> v(std::size_t{1} << st.range(0), 1.0);
  for (auto _ : st) {
    boolean_poly::walsh_hadamard(v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_WalshHadamard)->Arg(8)->Arg(16);

static void BM_AcceptancePoly(benchmark::State& st) {
  const auto s = protocols::make_scheme("S1", static_cast<int>(st.range(0)));
  const boolean_poly::TargetOutcome target{{"sk", std::string(static_cast<std::size_t>(s.n), '0')}};
  for (auto _ : st) benchmark::DoNotOptimize(boolean_poly::extract_acceptance_poly(s.gen, target, {}));
}
BENCHMARK(BM_AcceptancePoly)->Arg(2)->Arg(3);

static void BM_Reprogram(benchmark::State& st) {
  auto rng = stream_rng(0, 4);
  const auto f = harness::random_polynomial(static_cast<int>(st.range(0)), 4, 10, rng);
  for (auto _ : st) benchmark::DoNotOptimize(boolean_poly::reprogram(f, 2));
}
BENCHMARK(BM_Reprogram)->Arg(10)->Arg(16);

static void BM_AttackExactFamily(benchmark::State& st) {
  attack::AttackConfig cfg;
  cfg.epsilon = 0.25;
  const auto scheme = protocols::make_scheme(st.range(0) == 1 ? "S1" : "S2", 2);
  for (auto _ : st) {
    // A fresh session each time so the cached models are rebuilt.
    attack::AttackSession session(scheme, cfg);
    benchmark::DoNotOptimize(attack::run_over_family(session));
  }
}
BENCHMARK(BM_AttackExactFamily)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AttackSampledTrial(benchmark::State& st) {
  attack::AttackConfig cfg;
  cfg.epsilon = 0.3;
  cfg.mode = attack::AttackMode::sampled;
  attack::AttackSession session(protocols::make_scheme("S2", 2), cfg);
  const auto h = quantum_sim::Oracle::from_bitstring("0110");
  std::uint64_t trial = 0;
  for (auto _ : st) benchmark::DoNotOptimize(session.run(h, trial++));
}
BENCHMARK(BM_AttackSampledTrial)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
