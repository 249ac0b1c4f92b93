#include <gtest/gtest.h>

#include <cmath>

#include "../support/reference.hpp"
#include "qromlab/attack/attack.hpp"
#include "qromlab/attack/oracle_access.hpp"
#include "qromlab/attack/steps.hpp"
#include "qromlab/error.hpp"
#include "qromlab/protocols/schemes.hpp"

using namespace qromlab;
using namespace qromlab::attack;

TEST(Params, DefaultFormulas) {
  EXPECT_EQ(default_m(1, 0.25), 16);
  EXPECT_EQ(default_m(2, 0.1), 400);
  EXPECT_EQ(default_copies(1, 2, 0.25), 128);
  EXPECT_DOUBLE_EQ(default_heavy_threshold(2, 0.5), std::pow(0.5, 4) / 32.0);
  const double reps = std::pow(1.0, 6) / std::pow(0.3, 4) * std::log(1.0 / std::pow(0.3, 5));
  EXPECT_EQ(default_step1_reps(1, 0.3), static_cast<std::int64_t>(std::ceil(reps)));
  EXPECT_NEAR(query_formula(2, 1, 0.3), std::log(1.0 / 0.3) / std::pow(0.3, 4) + 2.0 / 0.09, 1e-9);
}

TEST(Params, OverridesAreRecorded) {
  AttackConfig cfg;
  cfg.epsilon = 0.25;
  cfg.m = 2;
  const auto p = resolve(cfg, 2, 1);
  EXPECT_EQ(p.m, 2);
  EXPECT_EQ(p.overridden, (std::vector<std::string>{"m"}));
  EXPECT_EQ(p.copies_t, default_copies(1, 2, 0.25));
}

TEST(Params, ValidationAndJson) {
  AttackConfig cfg;
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.epsilon = 0.2;
  cfg.m = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.m = 3;
  cfg.mode = AttackMode::sampled;
  const auto back = config_from_json(to_json(cfg));
  EXPECT_EQ(back.m, 3);
  EXPECT_EQ(back.mode, AttackMode::sampled);
  EXPECT_DOUBLE_EQ(back.epsilon, 0.2);
  EXPECT_THROW(attack_mode_from_string("fast"), InvalidArgument);
}

TEST(HeavySet, ThresholdAndCoverage) {
  const auto w = heavy_query_set({0.5, 0.01, 0.3, 0.0}, 0.1);
  EXPECT_EQ(w.members, (std::vector<std::uint64_t>{0, 2}));
  QueryRecord r;
  r.add(0, 1);
  EXPECT_FALSE(w.covered_by(r));
  r.add(2, 0);
  EXPECT_TRUE(w.covered_by(r));
}

TEST(OracleAccess, CountsEveryCall) {
  const auto h = quantum_sim::Oracle::from_bitstring("0110");
  OracleAccess acc(h);
  EXPECT_EQ(acc.classical_query(1), 1);
  EXPECT_EQ(acc.queries(), 1u);
  const auto s = protocols::make_scheme("S1", 2);
  acc.run(s.gen, {});
  EXPECT_EQ(acc.queries(), 1u + static_cast<std::uint64_t>(s.gen.d()));
  acc.run_copies(s.gen, {}, 5);
  EXPECT_EQ(acc.queries(), 1u + 6u * static_cast<std::uint64_t>(s.gen.d()));
  // Overrides change the answers but not the charge.
  const auto st = acc.run(s.gen, {}, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  const auto d = quantum_sim::measure(st, s.gen.output("pk"));
  for (const auto& [pk, p] : d) EXPECT_EQ(pk.back(), '1');
}

TEST(Step1, ExactRecordIsHeavySetWithTrueValues) {
  const auto ka = protocols::qpke_to_ka(protocols::make_scheme("S2", 2));
  AttackConfig cfg;
  cfg.epsilon = 0.3;
  const auto params = resolve(cfg, 2, 1);
  const auto h = quantum_sim::Oracle::from_bitstring("1101");
  const std::string m0 = "101";
  const auto step = step1_heavy_queries_exact(ka, FirstMessage{m0, std::nullopt}, h, params);
  const auto init = quantum_sim::initial_state(ka.bob, protocols::bob_input(ka, m0));
  const auto q = ref::run(ka.bob, h, init.amplitudes()).q;
  for (std::uint64_t i = 0; i < 4; ++i) {
    const bool heavy = q[i] >= params.heavy_threshold;
    EXPECT_EQ(step.r_e.entries().count(i) > 0, heavy) << i;
    if (heavy) EXPECT_EQ(step.r_e.entries().at(i), h(i));
  }
}

TEST(Attack, ExactModeBreaksShippedSchemes) {
  for (const auto& name : {"S1", "S2", "S4", "S5"}) {
    AttackConfig cfg;
    cfg.epsilon = 0.25;
    AttackSession session(protocols::make_scheme(name, 2), cfg);
    const auto results = run_over_family(session);
    ASSERT_EQ(results.size(), 16u);
    const auto sum = summarize(results);
    EXPECT_GE(sum.success_rate, 1.0 - 4 * cfg.epsilon) << name;
    for (const auto& r : results) {
      double mass = 0.0;
      for (const auto& b : r.branches) mass += b.probability;
      EXPECT_NEAR(mass, 1.0, 1e-9) << name;
      EXPECT_TRUE(r.diagnostics.heavy_covered);
      EXPECT_TRUE(r.diagnostics.bob_closeness_holds);
    }
  }
}

TEST(Attack, QuantumPublicKeyScheme) {
  AttackConfig cfg;
  cfg.epsilon = 0.25;
  const auto s = protocols::make_scheme("S3", 2);
  for (const auto& h : quantum_sim::all_oracles(2)) {
    const auto r = attack_quantum_pk(s, h, cfg);
    EXPECT_GE(r.success_probability, 1.0 - 4 * std::sqrt(cfg.epsilon));
    ASSERT_TRUE(r.diagnostics.uncompute_td.has_value());
    EXPECT_GE(*r.diagnostics.uncompute_td, -1e-12);
  }
}

TEST(Attack, SmallMReachesCaseBWithValidCertificates) {
  AttackConfig cfg;
  cfg.epsilon = 0.25;
  cfg.m = 1;
  AttackSession session(protocols::make_scheme("S5", 2), cfg);
  bool saw_b = false;
  for (const auto& r : run_over_family(session)) {
    for (const auto& c : r.diagnostics.case_b_checks) {
      saw_b = true;
      EXPECT_TRUE(c.holds);
      EXPECT_TRUE(c.h_prime_valid);
    }
  }
  EXPECT_TRUE(saw_b);
}

TEST(Attack, RejectsImperfectScheme) {
  AttackConfig cfg;
  EXPECT_THROW(AttackSession(protocols::make_scheme("broken", 2), cfg), InvalidArgument);
}

TEST(Attack, RejectsOracleOfWrongWidth) {
  AttackConfig cfg;
  AttackSession session(protocols::make_scheme("S1", 2), cfg);
  EXPECT_THROW(session.run(quantum_sim::Oracle::zero(1)), DimensionMismatch);
}

TEST(Attack, SampledModeDeterministicAndWithinBudget) {
  AttackConfig cfg;
  cfg.epsilon = 0.3;
  cfg.mode = AttackMode::sampled;
  cfg.seed = 9;
  AttackSession session(protocols::make_scheme("S1", 2), cfg);
  const auto h = quantum_sim::Oracle::from_bitstring("0011");
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto a = session.run(h, trial);
    const auto b = session.run(h, trial);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    ASSERT_TRUE(a.diagnostics.queries.has_value());
    const auto& q = *a.diagnostics.queries;
    EXPECT_LE(static_cast<double>(q.total()), q.budget);
    EXPECT_DOUBLE_EQ(q.budget, 10.0 * query_formula(2, 1, 0.3));
    EXPECT_EQ(q.step2, static_cast<std::uint64_t>(session.params().copies_t));
  }
}

TEST(Attack, JsonRecordFields) {
  AttackConfig cfg;
  const auto r = run_attack(protocols::make_scheme("S1", 2), quantum_sim::Oracle::from_bitstring("1000"), cfg);
  const auto j = to_json(r);
  for (const char* key : {"scheme", "n", "d", "epsilon", "mode", "case_tag", "success", "cmi", "mu_size",
                          "query_count", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("branches"));
  EXPECT_TRUE(to_json(r, true).contains("branches"));
}
