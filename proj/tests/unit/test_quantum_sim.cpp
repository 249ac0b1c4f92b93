#include <gtest/gtest.h>

#include <cmath>

#include "../support/reference.hpp"
#include "qromlab/error.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/quantum_sim/circuit_builder.hpp"
#include "qromlab/quantum_sim/simulator.hpp"
#include "qromlab/rng.hpp"

using namespace qromlab;
using namespace qromlab::quantum_sim;

TEST(RegisterLayout, BigEndianOffsets) {
  RegisterLayout lay({{"i", 2}, {"b", 1}});
  EXPECT_EQ(lay.total_qubits(), 3);
  EXPECT_EQ(lay.dimension(), 8u);
  // |i=2, b=1> is basis index 2*2 + 1.
  const auto idx = lay.write(lay.write(0, lay.at("i"), 2), lay.at("b"), 1);
  EXPECT_EQ(idx, 5u);
  EXPECT_EQ(lay.read(idx, lay.at("i")), 2u);
  EXPECT_EQ(lay.read(idx, std::vector<std::string>{"b", "i"}), 0b110u);
  EXPECT_EQ(lay.width({"i", "b"}), 3);
}

TEST(RegisterLayout, RejectsDuplicatesAndOversize) {
  EXPECT_THROW(RegisterLayout({{"a", 1}, {"a", 1}}), InvalidArgument);
  EXPECT_THROW(RegisterLayout({{"a", RegisterLayout::kMaxQubits + 1}}), Error);
}

TEST(Bitstring, RoundTrip) {
  EXPECT_EQ(to_bitstring(5, 4), "0101");
  EXPECT_EQ(from_bitstring("0101"), 5u);
  EXPECT_EQ(to_bitstring(0, 0), "");
}

TEST(Oracle, ConstructionAndDiff) {
  const auto h = Oracle::from_bitstring("0110");
  EXPECT_EQ(h.n(), 2);
  EXPECT_EQ(h(1), 1);
  EXPECT_EQ(h(3), 0);
  EXPECT_EQ(h.to_bitstring(), "0110");
  EXPECT_EQ(Oracle::from_bits(2, h.to_bits()), h);
  EXPECT_EQ(h.signed_view(), (std::vector<int>{1, -1, -1, 1}));
  const auto g = h.overwritten({{0, 1}, {1, 1}});
  EXPECT_EQ(g.to_bitstring(), "1110");
  EXPECT_EQ(h.diff(g), (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(all_oracles(2).size(), 16u);
  EXPECT_THROW(Oracle::from_bitstring("011"), Error);
}

TEST(CircuitBuilder, HadamardAndCnotMatchHandBuiltMatrices) {
  RegisterLayout lay({{"a", 1}, {"b", 1}});
  CircuitBuilder cb(lay);
  cb.hadamard("a").cnot("a", 0, "b", 0);
  const double r = 1.0 / std::sqrt(2.0);
  ref::Mat h(2, 2);
  h << r, r, r, -r;
  ref::Mat cnot = ref::Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const ref::Mat expected = cnot * ref::kron(h, ref::Mat::Identity(2, 2));
  EXPECT_LT((cb.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simulator, OracleApplicationMatchesReference) {
  auto rng = stream_rng(1, 0);
  for (int n = 1; n <= 3; ++n) {
    const auto alg = harness::random_algorithm(n, 1, 2, rng);
    const auto h = harness::random_oracle(n, rng);
    const auto st = run(alg, h, AlgorithmInput{});
    const auto expected = ref::run(alg, h, ref::zero_state(alg.layout().dimension()));
    EXPECT_LT((st.amplitudes() - expected.final_state).norm(), 1e-10) << "n=" << n;
  }
}

TEST(Simulator, QueryWeightsMatchReferenceAndSumToD) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = stream_rng(2, k);
    const int n = 1 + static_cast<int>(k % 3);
    const int d = 1 + static_cast<int>(k % 4);
    const auto alg = harness::random_algorithm(n, 1, d, rng);
    const auto h = harness::random_oracle(n, rng);
    const auto prof = query_weights(alg, h, AlgorithmInput{});
    const auto expected = ref::run(alg, h, ref::zero_state(alg.layout().dimension())).q;
    ASSERT_EQ(prof.weights.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(prof.weights[i], expected[i], 1e-10);
    EXPECT_NEAR(prof.total(), d, 1e-10);
  }
}

TEST(Simulator, ClassicalInputIsLoaded) {
  RegisterLayout lay({{"x", 2}, {"y", 2}});
  CircuitBuilder cb(lay);
  cb.xor_into("y", "x");
  QueryAlgorithm alg("copy", lay, InputSpec{{"x"}, {}, "", "", {{"y", {"y"}}}}, {cb.matrix()});
  const auto dist = output_distribution(alg, Oracle::zero(1), parse_classical_input(alg, "10"), "y");
  EXPECT_NEAR(dist["10"], 1.0, 1e-12);
}

TEST(Simulator, MeasureConditionAndReduce) {
  RegisterLayout lay({{"a", 1}, {"b", 1}});
  CircuitBuilder cb(lay);
  cb.hadamard("a").cnot("a", 0, "b", 0);
  const auto bell = SimState::pure(lay, ref::zero_state(4)).apply(cb.matrix());
  const auto d = measure(bell, {"a", "b"});
  EXPECT_NEAR(d["00"], 0.5, 1e-12);
  EXPECT_NEAR(d["11"], 0.5, 1e-12);
  EXPECT_NEAR(d["01"], 0.0, 1e-12);
  const auto [post, p] = condition_on(bell, {"a"}, 1);
  EXPECT_NEAR(p, 0.5, 1e-12);
  EXPECT_NEAR(measure(post, {"b"})["1"], 1.0, 1e-12);
  const auto rho_b = reduced_density(bell, {"b"});
  EXPECT_LT((rho_b - 0.5 * ref::Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simulator, MixedInputMatchesPureMixture) {
  // A density input equals the average of the two pure runs.
  RegisterLayout lay({{"a", 1}, {"b", 1}});
  CircuitBuilder cb(lay);
  cb.cnot("a", 0, "b", 0);
  QueryAlgorithm alg("q", lay, InputSpec{{}, {"a"}, "", "", {{"b", {"b"}}}}, {cb.matrix()});
  AlgorithmInput in;
  in.quantum.push_back({{"a"}, CVector(), 0.5 * CMatrix::Identity(2, 2)});
  EXPECT_NEAR(output_distribution(alg, Oracle::zero(1), in, "b")["1"], 0.5, 1e-12);
}

TEST(Distribution, TvAndEscapeAgreeWithReference) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto rng = stream_rng(3, k);
    const auto p = harness::random_distribution(6, 0.5, rng);
    const auto q = harness::random_distribution(6, 0.5, rng);
    EXPECT_NEAR(tv_distance(p, q), ref::tv(p.probabilities(), q.probabilities()), 1e-12);
    EXPECT_NEAR(support_escape_probability(p, q), ref::escape(p.probabilities(), q.probabilities()), 1e-12);
  }
}

TEST(Distribution, EscapeAtMostTwiceTv) {
  // Property: escape <= 2 TV for every pair.
  for (std::uint64_t k = 0; k < 500; ++k) {
    auto rng = stream_rng(4, k);
    const auto p = harness::random_distribution(1 + static_cast<int>(k % 8), 0.6, rng);
    const auto q = harness::random_distribution(p.width() > 0 ? 1 << p.width() : 1, 0.6, rng);
    if (p.width() != q.width()) continue;
    EXPECT_LE(support_escape_probability(p, q), 2.0 * tv_distance(p, q) + 1e-12);
  }
}

TEST(Distribution, ValidateRejectsNonNormalized) {
  OutputDistribution d({{"0", 0.4}, {"1", 0.4}});
  EXPECT_THROW(d.validate(), Error);
  EXPECT_THROW(OutputDistribution({{"0", 0.5}, {"10", 0.5}}), Error);
}

TEST(Bbbv, DeviationWithinBound) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto rng = stream_rng(5, k);
    const int n = 1 + static_cast<int>(k % 3), d = 1 + static_cast<int>((k / 3) % 3);
    const auto alg = harness::random_algorithm(n, 1, d, rng);
    const auto h = harness::random_oracle(n, rng);
    auto h2 = h;
    // Flip a single random point so the bound is non-trivial.
    const auto i = std::uniform_int_distribution<std::uint64_t>(0, h.size() - 1)(rng);
    h2 = h.overwritten({{i, 1 - h(i)}});
    const auto prof = query_weights(alg, h, AlgorithmInput{});
    const double bound = bbbv_deviation_bound(prof, h, h2, d);
    EXPECT_NEAR(bound, 2.0 * std::sqrt(d) * std::sqrt(prof.weights[i]), 1e-12);
    const double dev = state_deviation(run(alg, h, AlgorithmInput{}), run(alg, h2, AlgorithmInput{}));
    EXPECT_LE(dev, bound + 1e-8);
  }
}

TEST(Bbbv, IdenticalOraclesGiveZero) {
  auto rng = stream_rng(6, 0);
  const auto alg = harness::random_algorithm(2, 1, 2, rng);
  const auto h = harness::random_oracle(2, rng);
  EXPECT_EQ(bbbv_deviation_bound(query_weights(alg, h, AlgorithmInput{}), h, h, 2), 0.0);
}

TEST(QueryAlgorithm, RejectsNonUnitary) {
  RegisterLayout lay({{"a", 1}});
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(QueryAlgorithm("bad", lay, InputSpec{}, {m}), Error);
}

TEST(QueryAlgorithm, JsonRoundTrip) {
  auto rng = stream_rng(7, 0);
  const auto alg = harness::random_algorithm(2, 1, 1, rng);
  const auto back = algorithm_from_json(to_json(alg));
  EXPECT_EQ(back.d(), alg.d());
  EXPECT_EQ(back.layout(), alg.layout());
  const auto h = harness::random_oracle(2, rng);
  EXPECT_LT((run(back, h, AlgorithmInput{}).amplitudes() - run(alg, h, AlgorithmInput{}).amplitudes()).norm(), 1e-12);
}
