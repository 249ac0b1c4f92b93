#include <gtest/gtest.h>

#include "../support/reference.hpp"
#include "qromlab/error.hpp"
#include "qromlab/protocols/key_agreement.hpp"
#include "qromlab/protocols/schemes.hpp"

using namespace qromlab;
using namespace qromlab::protocols;

TEST(Schemes, NamesResolve) {
  for (const auto& name : scheme_names()) {
    EXPECT_TRUE(is_scheme_name(name));
    EXPECT_NO_THROW(make_scheme(name, 2).validate());
  }
  EXPECT_FALSE(is_scheme_name("S9"));
  EXPECT_THROW(make_scheme("S9", 2), InvalidArgument);
  EXPECT_EQ(make_scheme("pointer", 2).name, make_scheme("S1", 2).name);
}

TEST(Schemes, ShippedSchemesArePerfectlyComplete) {
  for (const auto& name : {"S1", "S2", "S3", "S4", "S5"}) {
    for (int n : {1, 2}) {
      const auto rep = check_perfect_completeness(make_scheme(name, n));
      EXPECT_TRUE(rep.perfect) << name << " n=" << n;
      EXPECT_NEAR(rep.worst_success, 1.0, 1e-9);
      EXPECT_EQ(rep.oracles_checked, std::size_t{1} << (1 << n));
    }
  }
}

TEST(Schemes, BrokenSchemeHasWitness) {
  const auto rep = check_perfect_completeness(make_scheme("broken", 2));
  EXPECT_FALSE(rep.perfect);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_LT(rep.witness->success, 1.0 - 1e-9);
  // Re-derive the witness failure from the decryption probability.
  const auto s = make_scheme("broken", 2);
  EXPECT_NEAR(decryption_probability(s, rep.witness->oracle, rep.witness->sk, rep.witness->ct, rep.witness->message),
              rep.witness->success, 1e-9);
}

TEST(Schemes, PointerSchemeGenMatchesDefinition) {
  // sk = r uniform, pk = (r, H(r)).
  const auto s = make_scheme("S1", 2);
  for (const auto& h : quantum_sim::all_oracles(2)) {
    for (std::uint64_t r = 0; r < 4; ++r) {
      const auto sk = quantum_sim::to_bitstring(r, 2);
      EXPECT_NEAR(gen_probability(s, h, sk, sk + std::to_string(h(r))), 0.25, 1e-12);
      EXPECT_NEAR(gen_probability(s, h, sk, sk + std::to_string(1 - h(r))), 0.0, 1e-12);
    }
  }
}

TEST(Schemes, JsonRoundTripPreservesBehaviour) {
  const auto s = make_scheme("S2", 2);
  const auto back = scheme_from_json(to_json(s));
  EXPECT_EQ(back.name, s.name);
  EXPECT_EQ(back.d, s.d);
  const auto h = quantum_sim::Oracle::from_bitstring("0110");
  const auto a = quantum_sim::output_distribution(s.gen, h, {}, "pk");
  const auto b = quantum_sim::output_distribution(back.gen, h, {}, "pk");
  EXPECT_NEAR(quantum_sim::tv_distance(a, b), 0.0, 1e-12);
}

TEST(KeyAgreement, TranscriptsNormalizedAndAgree) {
  for (const auto& name : {"S1", "S2", "S3", "S4", "S5"}) {
    const auto ka = qpke_to_ka(make_scheme(name, 2));
    for (const auto& h : quantum_sim::all_oracles(2)) {
      double total = 0.0;
      for (const auto& t : enumerate_transcripts(ka, h)) {
        total += t.probability;
        EXPECT_EQ(t.k_a, t.k_b) << name;
      }
      EXPECT_NEAR(total, 1.0, 1e-9) << name;
      EXPECT_NEAR(agreement_probability(ka, h), 1.0, 1e-9);
    }
  }
}

TEST(KeyAgreement, BobKeyIsUniform) {
  const auto ka = qpke_to_ka(make_scheme("S1", 2));
  const auto h = quantum_sim::Oracle::from_bitstring("1011");
  const auto st = quantum_sim::run(ka.bob, h, bob_input(ka, "011"));
  const auto kb = quantum_sim::measure(st, ka.bob.output("kB"));
  EXPECT_NEAR(kb["0"], 0.5, 1e-12);
  EXPECT_NEAR(kb["1"], 0.5, 1e-12);
}

TEST(QueryRecord, ConsistencyAndConflicts) {
  QueryRecord r;
  r.add(1, 1);
  r.add(3, 0);
  r.add(1, 1);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(r.key(), "1:1,3:0");
  EXPECT_THROW(r.add(1, 0), InvariantViolation);
  EXPECT_TRUE(r.consistent_with(quantum_sim::Oracle::from_bitstring("0100")));
  EXPECT_FALSE(r.consistent_with(quantum_sim::Oracle::from_bitstring("0001")));
}

TEST(Compatibility, HonestViewIsCompatible) {
  const auto ka = qpke_to_ka(make_scheme("S1", 2));
  const auto h = quantum_sim::Oracle::from_bitstring("0110");
  for (const auto& t : enumerate_transcripts(ka, h)) {
    QueryRecord r;
    r.add(0, h(0));
    EXPECT_TRUE(is_compatible(ka, TranscriptView{t.sk, t.m0, t.k_b, t.m1, r}, h));
    // R_E disagreeing with the oracle breaks compatibility.
    QueryRecord wrong;
    wrong.add(0, 1 - h(0));
    EXPECT_FALSE(is_compatible(ka, TranscriptView{t.sk, t.m0, t.k_b, t.m1, wrong}, h));
  }
}
