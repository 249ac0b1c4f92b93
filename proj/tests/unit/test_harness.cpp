#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qromlab/harness/experiment.hpp"
#include "qromlab/harness/lemmas.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/harness/report.hpp"
#include "qromlab/rng.hpp"

using namespace qromlab;
using namespace qromlab::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("qromlab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spec_error_path(const nlohmann::json& j) {
  try {
    spec_from_json(j).validate();
  } catch (const SpecError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST(Spec, ParsesSingularAndPluralForms) {
  const auto s = spec_from_json({{"scheme", "S1"}, {"epsilon", 0.25}, {"n", 2}, {"oracles", {{"sample", 3}}}});
  EXPECT_EQ(s.schemes, (std::vector<std::string>{"S1"}));
  EXPECT_EQ(s.epsilons, (std::vector<double>{0.25}));
  EXPECT_EQ(s.oracles.sample, 3u);
  const auto back = spec_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
}

TEST(Spec, ErrorsCarryFieldPaths) {
  EXPECT_EQ(spec_error_path({{"schemes", {"S1", "S9"}}, {"epsilons", {0.1}}}), "schemes[1]");
  EXPECT_EQ(spec_error_path({{"schemes", {"S1"}}, {"epsilons", {0.1, 1.5}}}), "epsilons[1]");
  EXPECT_EQ(spec_error_path({{"schemes", {"S1"}}, {"epsilons", {0.1}}, {"n", 9}}), "n[0]");
  EXPECT_EQ(spec_error_path({{"schemes", {"S1"}}, {"epsilons", {0.1}}, {"bogus", 1}}), "bogus");
  EXPECT_EQ(spec_error_path({{"schemes", {"S1"}}, {"epsilons", {0.1}}, {"mode", "fast"}}), "mode");
  EXPECT_EQ(spec_error_path({{"epsilons", {0.1}}}), "schemes");
}

TEST(Grid, CartesianProductAndKeys) {
  const auto s = spec_from_json({{"schemes", {"S1", "S2", "S4"}}, {"epsilons", {0.1, 0.25}}});
  const auto g = grid(s);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(row_key(g[1], attack::AttackMode::exact), "S1_n2_eps0.25_exact");
}

TEST(RunGrid, WritesRowsAndResumes) {
  const auto dir = scratch_dir("grid");
  const auto s = spec_from_json({{"schemes", {"S1", "S4", "S5"}}, {"epsilons", {0.1, 0.25}}});
  const auto first = run_grid(s, dir);
  EXPECT_EQ(first.rows.size(), 6u);
  EXPECT_EQ(first.completed, 6u);
  EXPECT_EQ(first.failed, 0u);
  for (const auto& r : first.rows) EXPECT_GE(r.success_rate, 1.0 - 4 * r.epsilon);
  const auto csv = slurp(dir / "summary.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), csv_header());
  EXPECT_EQ(csv_header().rfind("scheme,epsilon,success_rate,mean_cmi,mean_mu_size,case_a_fraction,queries", 0), 0u);

  GridRunOptions opts;
  opts.resume = true;
  const auto second = run_grid(s, dir, opts);
  EXPECT_EQ(second.skipped, 6u);
  EXPECT_EQ(second.completed, 0u);
  EXPECT_EQ(slurp(dir / "summary.csv"), csv);
  fs::remove_all(dir);
}

TEST(RunGrid, DeterministicRecords) {
  const auto s = spec_from_json({{"schemes", {"S2"}}, {"epsilons", {0.3}}, {"mode", "sampled"},
                                 {"seeds", 5}, {"oracles", {{"sample", 2}}}, {"seed", 11}});
  const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
  run_grid(s, a);
  auto par = s;
  par.jobs = 2;
  run_grid(par, b);
  EXPECT_EQ(slurp(a / "records.jsonl"), slurp(b / "records.jsonl"));
  EXPECT_FALSE(slurp(a / "records.jsonl").empty());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Report, RoundingAndPolicySnapshot) {
  EXPECT_EQ(round12(-1e-15), 0.0);
  EXPECT_EQ(round12(0.1 + 0.2), 0.3);
  ReportRow row;
  row.scheme = "S1";
  const auto j = to_json(row);
  EXPECT_TRUE(j.contains("policy"));
  EXPECT_EQ(row_from_json(j).scheme, "S1");
  EXPECT_NE(csv_line(row).find("unitarity_tol"), std::string::npos);
}

TEST(Random, HaarUnitaryIsUnitary) {
  auto rng = stream_rng(70, 0);
  const auto u = random_unitary(8, rng);
  EXPECT_LT(unitarity_defect(u), 1e-12);
  const auto rho = random_density(4, 2, rng);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_EQ(random_polynomial(6, 3, 4, rng).degree(), 3);
}

TEST(Lemmas, IdsAndUnknown) {
  EXPECT_EQ(lemma_ids().size(), 13u);
  EXPECT_TRUE(is_lemma_id("ssa"));
  EXPECT_FALSE(is_lemma_id("nope"));
  EXPECT_THROW(verify_lemma("nope"), InvalidArgument);
  EXPECT_NE(lemma_usage().find("key-compatible"), std::string::npos);
}

TEST(Lemmas, FastSuitesPass) {
  LemmaParams p;
  p.trials = 20;
  for (const auto& id : {"support", "bbbv", "perm-invariance", "chain-rule", "ssa", "alon", "reprogram",
                         "fr-recovery"}) {
    const auto r = verify_lemma(id, p);
    EXPECT_TRUE(r.passed) << id << ": " << to_json(r).dump();
    EXPECT_GT(r.checks, 0) << id;
  }
  LemmaParams four;
  four.trials = 10;
  four.dims = {2, 2, 2, 2};
  EXPECT_TRUE(verify_lemma("ssa", four).passed);
  four.dims = {2, 2};
  EXPECT_THROW(verify_lemma("ssa", four), InvalidArgument);
}
