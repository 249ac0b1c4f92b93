#include <gtest/gtest.h>

#include <bit>

#include "../support/reference.hpp"
#include "qromlab/boolean_poly/acceptance.hpp"
#include "qromlab/boolean_poly/reprogram.hpp"
#include "qromlab/error.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/rng.hpp"

using namespace qromlab;
using namespace qromlab::boolean_poly;

TEST(MultilinearPoly, FromValuesMatchesDefinition) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = stream_rng(60, k);
    const int n = 1 + static_cast<int>(k % 6);
    std::vector<double> values(std::size_t{1} << n);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : values) v = u(rng);
    const auto f = MultilinearPoly::from_values(n, values);
    const auto a = ref::fourier(values);
    for (std::size_t s = 0; s < a.size(); ++s) EXPECT_NEAR(f.coefficient(s), a[s], 1e-12);
    const auto back = f.evaluate_all();
    for (std::size_t h = 0; h < values.size(); ++h) EXPECT_NEAR(back[h], values[h], 1e-12);
  }
}

TEST(MultilinearPoly, EvaluateSignedAndIndexAgree) {
  const MultilinearPoly f(3, {{0b000, 1.0}, {0b011, -2.0}, {0b100, 0.5}});
  EXPECT_EQ(f.degree(), 2);
  for (std::uint64_t h = 0; h < 8; ++h) {
    std::vector<int> x(3);
    for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = (h >> i) & 1 ? -1 : 1;
    EXPECT_DOUBLE_EQ(f.evaluate(h), f.evaluate(x));
    EXPECT_DOUBLE_EQ(f.evaluate(h), ref::eval(f.coeffs(), h));
  }
  EXPECT_EQ(MultilinearPoly().degree(), -1);
  EXPECT_TRUE(MultilinearPoly().is_zero());
}

TEST(MultilinearPoly, JsonRoundTrip) {
  auto rng = stream_rng(61, 0);
  const auto f = harness::random_polynomial(6, 3, 5, rng);
  const auto g = poly_from_json(to_json(f));
  EXPECT_EQ(g.coeffs(), f.coeffs());
  EXPECT_EQ(g.num_vars(), 6);
}

TEST(WalshHadamard, Involution) {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  auto w = v;
  walsh_hadamard(w);
  walsh_hadamard(w);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_DOUBLE_EQ(w[i], 8 * v[i]);
  std::vector<double> bad(3);
  EXPECT_THROW(walsh_hadamard(bad), Error);
}

TEST(PartialAssignment, ApplyAndCompose) {
  PartialAssignment mu({{0, -1}, {2, 1}});
  EXPECT_EQ(mu.apply(0b100u), 0b001u);
  EXPECT_EQ(mu.apply(std::vector<int>{1, 1, -1}), (std::vector<int>{-1, 1, 1}));
  EXPECT_EQ(mu.support_mask(), 0b101u);
  PartialAssignment eta({{2, -1}, {3, 1}});
  const auto c = mu * eta;
  EXPECT_EQ(c.at(2), -1);  // eta wins
  for (std::uint64_t h = 0; h < 16; ++h) EXPECT_EQ(c.apply(h), eta.apply(mu.apply(h)));
  EXPECT_FALSE(disjoint(mu, eta));
  EXPECT_TRUE(disjoint(mu, PartialAssignment(std::map<std::uint64_t, int>{{1, 1}})));
  EXPECT_THROW(PartialAssignment(std::map<std::uint64_t, int>{{0, 0}}), Error);
}

TEST(Restrict, MatchesSubstitution) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    auto rng = stream_rng(62, k);
    const auto f = harness::random_polynomial(6, 3, 6, rng);
    PartialAssignment eta({{1, 1}, {4, -1}});
    const auto g = restrict(f, eta);
    for (std::uint64_t h = 0; h < 64; ++h) {
      EXPECT_NEAR(g.evaluate(h), ref::eval(f.coeffs(), ref::apply(eta.entries(), h)), 1e-12);
    }
    for (const auto& [mask, c] : g.coeffs()) EXPECT_EQ(mask & eta.support_mask(), 0u);
  }
}

TEST(Alon, FixingHitsNonzero) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto rng = stream_rng(63, k);
    const auto f = harness::random_polynomial(7, 1 + static_cast<int>(k % 4), 6, rng);
    const auto maxima = maximal_disjoint_maximum_monomials(f);
    ASSERT_FALSE(maxima.empty());
    for (std::size_t a = 0; a < maxima.size(); ++a) {
      EXPECT_EQ(std::popcount(maxima[a]), f.degree());
      for (std::size_t b = a + 1; b < maxima.size(); ++b) EXPECT_EQ(maxima[a] & maxima[b], 0u);
    }
    for (std::uint64_t h : {0ull, 0x55ull, 0x7full}) {
      const auto mu = alon_fixing(f, maxima[0], h);
      EXPECT_EQ(mu.support_mask(), maxima[0]);
      EXPECT_NE(ref::eval(f.coeffs(), ref::apply(mu.entries(), h)), 0.0);
    }
  }
}

TEST(Alon, RejectsNonMaximalMonomial) {
  const MultilinearPoly f(3, {{0b011, 1.0}, {0b100, 1.0}});
  EXPECT_THROW(alon_fixing(f, 0b100, 0), InvalidArgument);
}

TEST(Reprogram, ConstantPolynomialIsCaseAWithEmptyMu) {
  const MultilinearPoly f(4, {{0, 0.25}});
  const auto out = reprogram(f, 2);
  EXPECT_EQ(out.case_tag, ReprogramCase::A);
  EXPECT_EQ(out.mu.size(), 0u);
  EXPECT_TRUE(verify_reprogram_outcome(f, out, 2));
}

TEST(Reprogram, ManyDisjointMonomialsGiveCaseB) {
  // x0 x1 + x2 x3 + x4 x5 with m = 1: three disjoint maximum monomials.
  const MultilinearPoly f(6, {{0b000011, 1.0}, {0b001100, 1.0}, {0b110000, 1.0}});
  const auto out = reprogram(f, 1);
  EXPECT_EQ(out.case_tag, ReprogramCase::B);
  EXPECT_GT(out.disjoint_monomials.size(), 1u);
  EXPECT_TRUE(verify_reprogram_outcome(f, out, 1));
  const auto fixers = case_b_fixers(out, 1, 0);
  ASSERT_EQ(fixers.size(), 1u);
  EXPECT_NE(ref::eval(f.coeffs(), ref::apply((fixers[0] * out.mu).entries(), 0)), 0.0);
}

TEST(Reprogram, WinWinProperty) {
  int a = 0, b = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto rng = stream_rng(64, k);
    const int n = 4 + static_cast<int>(k % 5);
    const int deg = 1 + static_cast<int>(k % 4);
    const int m = 1 + static_cast<int>(k % 3);
    const auto f = harness::random_polynomial(n, deg, 2 + static_cast<int>(k % 7), rng);
    const auto out = reprogram(f, m);
    EXPECT_LE(out.mu.size(), static_cast<std::size_t>(m * f.degree() * f.degree()));
    EXPECT_TRUE(verify_reprogram_outcome(f, out, m)) << "trial " << k;
    if (out.case_tag == ReprogramCase::A) {
      ++a;
      for (std::uint64_t h = 0; h < (1ull << n); ++h) {
        EXPECT_NE(ref::eval(f.coeffs(), ref::apply(out.mu.entries(), h)), 0.0);
      }
    } else {
      ++b;
      EXPECT_GT(out.disjoint_monomials.size(), static_cast<std::size_t>(m));
    }
  }
  EXPECT_GT(a, 0);
  EXPECT_GT(b, 0);
}

TEST(Reprogram, VerifierRejectsFalseCaseA) {
  // g vanishes at x0 = -1, so an empty mu cannot be a case-A outcome.
  const MultilinearPoly g(2, {{0b00, 0.5}, {0b01, 0.5}});
  ReprogramOutcome fake;
  fake.case_tag = ReprogramCase::A;
  fake.restricted = g;
  fake.input_degree = 1;
  EXPECT_FALSE(verify_reprogram_outcome(g, fake, 1));
}

TEST(Acceptance, PolynomialMatchesSimulationAndDegree) {
  for (const auto& name : {"S1", "S2", "S5"}) {
    const auto s = protocols::make_scheme(name, 2);
    for (const auto& [sk, p] : quantum_sim::output_distribution(s.gen, quantum_sim::Oracle::zero(2), {}, "sk")) {
      (void)p;
      const TargetOutcome target{{"sk", sk}};
      const auto f = extract_acceptance_poly(s.gen, target, {});
      EXPECT_LE(f.degree(), 2 * s.gen.d());
      for (const auto& h : quantum_sim::all_oracles(2)) {
        const double direct = outcome_probability(s.gen, quantum_sim::run(s.gen, h, quantum_sim::AlgorithmInput{}), target);
        // h's truth-table index has bit i set iff H(i) = 1.
        EXPECT_NEAR(f.evaluate(h.to_bits()), direct, 1e-10);
      }
    }
  }
}

TEST(Acceptance, ZeroQueryAlgorithmWithWiderOracle) {
  const auto s = protocols::make_scheme("S3", 2);
  const auto f = extract_acceptance_poly(s.gen, {{"sk", "00"}}, {}, PartialAssignment(std::map<std::uint64_t, int>{{3, 1}}), default_policy(), 1, 2);
  EXPECT_EQ(f.num_vars(), 4);
  EXPECT_EQ(f.degree(), 0);
  EXPECT_THROW(extract_acceptance_poly(s.gen, {{"sk", "00"}}, {}, PartialAssignment(std::map<std::uint64_t, int>{{9, 1}}), default_policy(), 1, 2),
               DimensionMismatch);
}
