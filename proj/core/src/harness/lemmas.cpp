#include "qromlab/harness/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "qromlab/attack/attack.hpp"
#include "qromlab/boolean_poly/acceptance.hpp"
#include "qromlab/boolean_poly/reprogram.hpp"
#include "qromlab/error.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/info_theory/entropy.hpp"
#include "qromlab/info_theory/recovery.hpp"
#include "qromlab/parallel.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/quantum_sim/simulator.hpp"
#include "qromlab/rng.hpp"

namespace qromlab::harness {

namespace {

using info_theory::Labels;
using info_theory::MultipartiteState;
using info_theory::System;
using quantum_sim::Oracle;

constexpr std::size_t kMaxSamples = 10;

// Accumulates (bound - measured) slacks.
class Tally {
 public:
  explicit Tally(LemmaReport& r) : r_(r) { r_.worst_slack = INFINITY; }
  void check(double slack, double tol, const std::string& what) {
    ++r_.checks;
    r_.worst_slack = std::min(r_.worst_slack, slack);
    if (slack < -tol) fail(what + " (slack " + std::to_string(slack) + ")");
  }
  void require(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    ++r_.failures;
    if (r_.failure_samples.size() < kMaxSamples) r_.failure_samples.push_back(what);
  }
  void finish() {
    if (!std::isfinite(r_.worst_slack)) r_.worst_slack = 0.0;
    r_.passed = r_.failures == 0 && r_.checks > 0;
  }

 private:
  LemmaReport& r_;
};

std::vector<std::string> shipped_schemes() {
  std::vector<std::string> out;
  for (const auto& s : protocols::scheme_names()) {
    if (s != "broken") out.push_back(s);
  }
  return out;
}

std::vector<std::pair<std::string, const quantum_sim::QueryAlgorithm*>> algorithms_of(
    const protocols::QPKEScheme& s) {
  std::vector<std::pair<std::string, const quantum_sim::QueryAlgorithm*>> out{
      {"gen", &s.gen}, {"enc", &s.enc}, {"dec", &s.dec}};
  if (s.pkgen) out.emplace_back("pkgen", &*s.pkgen);
  return out;
}

// A handful of classical inputs: all of them when there are at most four.
std::vector<std::string> sample_inputs(const quantum_sim::QueryAlgorithm& alg, Rng& rng) {
  const int w = alg.layout().width(alg.spec().classical_inputs);
  std::set<std::string> out;
  if (w <= 2) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v) out.insert(quantum_sim::to_bitstring(v, w));
  } else {
    out.insert(std::string(static_cast<std::size_t>(w), '0'));
    out.insert(std::string(static_cast<std::size_t>(w), '1'));
    std::uniform_int_distribution<std::uint64_t> u(0, (std::uint64_t{1} << w) - 1);
    for (int k = 0; k < 2; ++k) out.insert(quantum_sim::to_bitstring(u(rng), w));
  }
  return {out.begin(), out.end()};
}

Labels copy_labels(const std::string& base, int t) {
  Labels out;
  for (int i = 1; i <= t; ++i) out.push_back(base + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------- support

void suite_support(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(1000);
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const int size = std::uniform_int_distribution<int>(1, 8)(rng);
    const auto a = random_distribution(size, 0.6, rng);
    const auto b = random_distribution(size, 0.6, rng);
    const double escape = quantum_sim::support_escape_probability(a, b);
    const double tv = quantum_sim::tv_distance(a, b);
    tally.check(2.0 * tv - escape, 1e-12, "trial " + std::to_string(k) + ": escape > 2 TV");
  }
  r.details["trials"] = trials;
  tally.finish();
}

// ---------------------------------------------------------------- bbbv

void suite_bbbv(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(500);
  const int max_n = std::clamp(p.n.value_or(3), 1, 3);
  const int max_d = std::clamp(p.d.value_or(3), 1, 3);
  double worst_ratio = 0.0;
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    const int d = std::uniform_int_distribution<int>(1, max_d)(rng);
    const auto alg = random_algorithm(n, 1, d, rng);
    const Oracle h = random_oracle(n, rng);
    Oracle h2 = random_oracle(n, rng);
    const auto profile = quantum_sim::query_weights(alg, h, quantum_sim::AlgorithmInput{});
    const double bound = quantum_sim::bbbv_deviation_bound(profile, h, h2, d);
    const auto psi = quantum_sim::run(alg, h, quantum_sim::AlgorithmInput{});
    const auto phi = quantum_sim::run(alg, h2, quantum_sim::AlgorithmInput{});
    const double dev = quantum_sim::state_deviation(psi, phi);
    const std::string tag = "trial " + std::to_string(k) + " (n=" + std::to_string(n) +
                            ", d=" + std::to_string(d) + ")";
    tally.check(bound - dev, 1e-8, tag + ": deviation exceeds BBBV bound");
    tally.check(1e-8 - std::abs(profile.total() - d), 0.0, tag + ": sum of query weights != d");
    const double tv = quantum_sim::tv_distance(quantum_sim::measure(psi, {"w"}),
                                               quantum_sim::measure(phi, {"w"}));
    tally.check(4.0 * dev - tv, 1e-8, tag + ": output TV exceeds 4 x deviation");
    if (bound > 0.0) worst_ratio = std::max(worst_ratio, dev / bound);
  }
  r.details["trials"] = trials;
  r.details["max_deviation_over_bound"] = worst_ratio;
  tally.finish();
}

// ---------------------------------------------------------------- entropy-bound

void suite_entropy_bound(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const std::vector<int> ns = p.n ? std::vector<int>{*p.n} : std::vector<int>{1, 2};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& name : p.scheme ? std::vector<std::string>{*p.scheme} : shipped_schemes()) {
    for (int n : ns) {
      const auto s = protocols::make_scheme(name, n);
      for (const auto& [role, alg] : algorithms_of(s)) {
        Labels regs;
        for (const auto& reg : alg->layout().registers()) regs.push_back(reg.name);
        const double entropy = info_theory::oracle_averaged_entropy(*alg, {}, regs);
        const double bound = 2.0 * alg->d() * (alg->n_in() + 1);
        tally.check(bound - entropy, 1e-9, s.name + "." + role + " n=" + std::to_string(n));
        rows.push_back({{"algorithm", alg->name()}, {"n", n}, {"d", alg->d()},
                        {"entropy", entropy}, {"bound", bound}});
      }
    }
  }
  r.details["algorithms"] = rows;
  tally.finish();
}

// ---------------------------------------------------------------- perm-invariance

// sum_k p_k |a_k><a_k| (x) |c_k><c_k| (x) rho_k^{(x) t}: separable and
// symmetric in the copies.
MultipartiteState random_copy_state(int t, int components, Rng& rng) {
  std::vector<System> systems{{"A", 2}, {"C", 2}};
  for (const auto& l : copy_labels("B", t)) systems.push_back({l, 2});
  int dim = 4;
  for (int i = 0; i < t; ++i) dim *= 2;
  CMatrix rho = CMatrix::Zero(dim, dim);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_int_distribution<int> bit(0, 1);
  double total = 0.0;
  for (int k = 0; k < components; ++k) {
    const double w = u(rng);
    total += w;
    CMatrix a = CMatrix::Zero(2, 2), c = CMatrix::Zero(2, 2);
    const int av = bit(rng), cv = bit(rng);
    a(av, av) = 1.0;
    c(cv, cv) = 1.0;
    const CMatrix b = random_density(2, std::uniform_int_distribution<int>(1, 2)(rng), rng);
    CMatrix term = kron(a, c);
    for (int i = 0; i < t; ++i) term = kron(term, b);
    rho += w * term;
  }
  return MultipartiteState(systems, rho / total);
}

void suite_perm_invariance(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(30);
  const int t = std::clamp(p.t.value_or(3), 1, 5);
  const auto b = copy_labels("B", t);
  double worst_asym = 0.0;
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const auto state = random_copy_state(t, std::uniform_int_distribution<int>(1, 4)(rng), rng);
    const std::string tag = "trial " + std::to_string(k);
    const double asym = info_theory::permutation_asymmetry(state, b);
    worst_asym = std::max(worst_asym, asym);
    tally.check(1e-7 - asym, 0.0, tag + ": copies not swap symmetric");
    const auto res = info_theory::select_markov_prefix(state, {"A"}, {"C"}, b);
    // Independent recomputation of the selected prefix CMI.
    Labels cond{"C"};
    for (int i = 0; i < res.j; ++i) cond.push_back(b[static_cast<std::size_t>(i)]);
    const double direct = info_theory::cmi(state, {b.back()}, {"A"}, cond);
    const double s_a = info_theory::von_neumann_entropy(state, {"A"});
    tally.check(1e-9 - std::abs(direct - res.cmi_value), 0.0, tag + ": reported CMI differs");
    tally.check(s_a / t + 1e-7 - direct, 0.0, tag + ": CMI above S(A)/t");
    tally.check(1e-9 - std::abs(s_a - res.entropy_S_A), 0.0, tag + ": reported S(A) differs");
  }
  r.details["trials"] = trials;
  r.details["t"] = t;
  r.details["max_asymmetry"] = worst_asym;
  tally.finish();
}

// ---------------------------------------------------------------- chain-rule

void suite_chain_rule(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(100);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const int rank = std::uniform_int_distribution<int>(1, 16)(rng);
    const auto state = random_multipartite({{"A", 2}, {"C", 2}, {"B1", 2}, {"B2", 2}}, rank, rng);
    const auto terms = info_theory::chain_rule_decomposition(state, {"A"}, {"C"}, {"B1", "B2"});
    double sum = 0.0;
    for (double v : terms) sum += v;
    const double direct = info_theory::cmi(state, {"B1", "B2"}, {"A"}, {"C"});
    worst = std::max(worst, std::abs(sum - direct));
    tally.check(1e-7 - std::abs(sum - direct), 0.0, "trial " + std::to_string(k));
  }
  r.details["trials"] = trials;
  r.details["max_abs_error"] = worst;
  tally.finish();
}

// ---------------------------------------------------------------- ssa

void suite_ssa(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(100);
  std::vector<int> dims = p.dims.empty() ? std::vector<int>{2, 2, 2} : p.dims;
  if (dims.size() < 3 || dims.size() > 4) throw InvalidArgument("ssa: --dims needs 3 or 4 entries");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("ssa: dims must be positive");
    total *= static_cast<std::size_t>(d);
  }
  if (total > 256) throw SizeLimitExceeded("ssa: total dimension above 256");
  static const Labels names{"A", "B", "C", "D"};
  std::vector<System> systems;
  for (std::size_t i = 0; i < dims.size(); ++i) systems.push_back({names[i], dims[i]});
  double min_slack = INFINITY;
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const int rank = std::uniform_int_distribution<int>(1, static_cast<int>(total))(rng);
    const auto state = random_multipartite(systems, rank, rng);
    std::optional<Labels> cond;
    if (dims.size() == 4) cond = Labels{"D"};
    const auto res = info_theory::check_strong_subadditivity(state, {"A"}, {"B"}, {"C"}, cond);
    min_slack = std::min(min_slack, res.slack);
    tally.check(res.slack, 1e-7, "trial " + std::to_string(k));
    // Separable conditional entropy: a classical-quantum version of the same
    // state has S(A|B) >= 0.
    CMatrix diag = CMatrix::Zero(state.density().rows(), state.density().cols());
    diag.diagonal() = state.density().diagonal();
    const MultipartiteState classical(systems, diag);
    const double cond_entropy = info_theory::von_neumann_entropy(classical, {"A", "B"}) -
                                info_theory::von_neumann_entropy(classical, {"B"});
    tally.check(cond_entropy, 1e-8, "trial " + std::to_string(k) + ": S(A|B) < 0 on separable state");
  }
  r.details["trials"] = trials;
  r.details["dims"] = dims;
  r.details["min_slack"] = min_slack;
  tally.finish();
}

// ---------------------------------------------------------------- poly-degree

void suite_poly_degree(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const std::vector<int> ns = p.n ? std::vector<int>{*p.n} : std::vector<int>{1, 2, 3};
  std::vector<std::string> schemes = p.scheme ? std::vector<std::string>{*p.scheme} : shipped_schemes();
  std::size_t polys = 0;
  double worst_high = 0.0;
  for (const auto& name : schemes) {
    for (int n : ns) {
      if (n < 1 || n > 3) throw InvalidArgument("poly-degree: n must be in {1, 2, 3} (N <= 8)");
      const auto s = protocols::make_scheme(name, n);
      const auto oracles = quantum_sim::all_oracles(n);
      const std::size_t N = std::size_t{1} << n;
      auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(n));
      for (const auto& [role, alg] : algorithms_of(s)) {
        for (const auto& bits : sample_inputs(*alg, rng)) {
          const auto input = quantum_sim::parse_classical_input(*alg, bits);
          // values[field][outcome][h]
          std::map<std::string, std::map<std::string, std::vector<double>>> values;
          for (std::size_t h = 0; h < oracles.size(); ++h) {
            const auto st = quantum_sim::run(*alg, oracles[h], input);
            for (const auto& [field, regs] : alg->spec().outputs) {
              for (const auto& [outcome, pr] : quantum_sim::measure(st, regs)) {
                auto& v = values[field][outcome];
                if (v.empty()) v.assign(oracles.size(), 0.0);
                v[h] = pr;
              }
            }
          }
          for (auto& [field, by_outcome] : values) {
            for (auto& [outcome, v] : by_outcome) {
              boolean_poly::walsh_hadamard(v);
              double high = 0.0;
              for (std::size_t mask = 0; mask < v.size(); ++mask) {
                if (std::popcount(mask) > 2 * alg->d()) {
                  high = std::max(high, std::abs(v[mask]) / static_cast<double>(v.size()));
                }
              }
              ++polys;
              worst_high = std::max(worst_high, high);
              tally.check(1e-9 - high, 0.0,
                          alg->name() + " n=" + std::to_string(n) + " input " + bits + " " +
                              field + "=" + outcome + ": coefficient above degree 2d");
            }
          }
          (void)N;
        }
      }
    }
  }
  r.details["polynomials"] = polys;
  r.details["max_high_degree_coefficient"] = worst_high;
  tally.finish();
}

// ---------------------------------------------------------------- alon

void suite_alon(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(200);
  const int max_n = std::clamp(p.N.value_or(8), 2, 16);
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const int N = std::uniform_int_distribution<int>(2, max_n)(rng);
    const int deg = std::uniform_int_distribution<int>(1, std::min(4, N))(rng);
    const auto f = random_polynomial(N, deg, std::uniform_int_distribution<int>(1, 8)(rng), rng);
    const int top = f.degree();
    std::vector<std::uint64_t> maxima;
    for (const auto& [mask, c] : f.coeffs()) {
      if (std::popcount(mask) == top) maxima.push_back(mask);
    }
    const auto S = maxima[std::uniform_int_distribution<std::size_t>(0, maxima.size() - 1)(rng)];
    const auto h = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << N) - 1)(rng);
    const std::string tag = "trial " + std::to_string(k);
    try {
      const auto mu = boolean_poly::alon_fixing(f, S, h);
      tally.require(mu.support_mask() == S, tag + ": support differs from the monomial");
      tally.require(f.nonzero_at(mu.apply(h)), tag + ": f(x^mu) = 0");
    } catch (const InvariantViolation& e) {
      tally.fail(tag + ": " + e.what());
    }
    // The disjoint maximum-monomial set is maximal.
    const auto chosen = boolean_poly::maximal_disjoint_maximum_monomials(f);
    for (auto mono : maxima) {
      const bool meets = std::any_of(chosen.begin(), chosen.end(), [&](auto c) { return (c & mono) != 0; });
      tally.require(meets, tag + ": maximum monomial misses the disjoint set");
    }
  }
  r.details["trials"] = trials;
  tally.finish();
}

// ---------------------------------------------------------------- reprogram

void suite_reprogram(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(200);
  const int max_n = std::clamp(p.N.value_or(10), 1, 14);
  int case_a = 0, case_b = 0;
  std::size_t max_mu = 0;
  std::vector<int> outcomes(static_cast<std::size_t>(trials), 0);
  std::vector<std::string> errors(static_cast<std::size_t>(trials));
  std::vector<std::size_t> mus(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), p.jobs, [&](std::size_t k) {
    auto rng = stream_rng(p.seed, k);
    const int N = std::uniform_int_distribution<int>(std::min(4, max_n), max_n)(rng);
    const int deg = std::uniform_int_distribution<int>(1, std::min(4, N))(rng);
    const int m = p.m.value_or(std::uniform_int_distribution<int>(1, 3)(rng));
    const auto f = random_polynomial(N, deg, std::uniform_int_distribution<int>(1, 10)(rng), rng);
    const std::string tag = "trial " + std::to_string(k) + " (N=" + std::to_string(N) +
                            ", deg=" + std::to_string(f.degree()) + ", m=" + std::to_string(m) + ")";
    const auto out = boolean_poly::reprogram(f, m);
    const auto cap = static_cast<std::size_t>(m * f.degree() * f.degree());
    mus[k] = out.mu.size();
    if (out.mu.size() > cap) {
      errors[k] = tag + ": |mu| = " + std::to_string(out.mu.size()) + " > m deg^2";
    } else if (!boolean_poly::verify_reprogram_outcome(f, out, m)) {
      errors[k] = tag + ": outcome fails the exhaustive check";
    }
    outcomes[k] = out.case_tag == boolean_poly::ReprogramCase::A ? 1 : 2;
  });
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    tally.require(errors[k].empty(), errors[k]);
    (outcomes[k] == 1 ? case_a : case_b)++;
    max_mu = std::max(max_mu, mus[k]);
  }
  r.details["trials"] = trials;
  r.details["case_a"] = case_a;
  r.details["case_b"] = case_b;
  r.details["max_mu"] = max_mu;
  tally.finish();
}

// ---------------------------------------------------------------- fr-recovery

// Exact Markov chains A - E - B. Even trials: E classical, rho =
// sum_e p_e rho_A^e (x) |e><e| (x) rho_B^e. Odd trials: E = E_L E_R with
// rho = rho_{A E_L} (x) rho_{E_R B}.
MultipartiteState markov_chain(int k, Rng& rng) {
  if (k % 2 == 0) {
    const int de = std::uniform_int_distribution<int>(2, 3)(rng);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    CMatrix rho = CMatrix::Zero(2 * de * 2, 2 * de * 2);
    double total = 0.0;
    for (int e = 0; e < de; ++e) {
      const double w = u(rng);
      total += w;
      CMatrix proj = CMatrix::Zero(de, de);
      proj(e, e) = 1.0;
      rho += w * kron(kron(random_density(2, 2, rng), proj), random_density(2, 2, rng));
    }
    return MultipartiteState({{"A", 2}, {"E", de}, {"B", 2}}, rho / total);
  }
  const auto left = random_multipartite({{"A", 2}, {"EL", 2}}, 2, rng);
  const auto right = random_multipartite({{"ER", 2}, {"B", 2}}, 2, rng);
  return MultipartiteState::product(left, right).permuted({"A", "EL", "ER", "B"});
}

void suite_fr_recovery(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int trials = p.trials.value_or(50);
  double worst_exact = 0.0;
  nlohmann::json perturbed = nlohmann::json::array();
  int fr_exceeded = 0;
  for (int k = 0; k < trials; ++k) {
    auto rng = stream_rng(p.seed, static_cast<std::uint64_t>(k));
    const auto chain = markov_chain(k, rng);
    Labels e;
    for (const auto& s : chain.systems()) {
      if (s.label != "A" && s.label != "B") e.push_back(s.label);
    }
    const std::string tag = "chain " + std::to_string(k);
    const double c = info_theory::cmi(chain, {"A"}, {"B"}, e);
    tally.check(1e-10 - std::abs(c), 0.0, tag + ": constructed chain has CMI above 1e-10");
    const auto rep = info_theory::evaluate_recovery(chain, {"A"}, e);
    worst_exact = std::max(worst_exact, rep.trace_distance);
    tally.check(1e-6 - rep.trace_distance, 0.0, tag + ": Petz reconstruction TD >= 1e-6");
    const auto ch = info_theory::build_recovery_channel(chain, {"A"}, e);
    tally.check(1e-8 - ch.trace_preservation_defect(), 0.0, tag + ": channel not trace preserving");
    tally.check(ch.min_choi_eigenvalue(), 1e-10, tag + ": Choi matrix not PSD");

    // Perturbed chains are reported, not asserted.
    for (double delta : {0.01, 0.05, 0.2}) {
      const int dim = static_cast<int>(chain.dimension());
      const MultipartiteState noisy(chain.systems(), (1.0 - delta) * chain.density() +
                                                         delta * random_density(dim, dim, rng));
      const auto pr = info_theory::evaluate_recovery(noisy, {"A"}, e);
      if (pr.slack < 0.0) ++fr_exceeded;
      perturbed.push_back({{"chain", k}, {"delta", delta}, {"cmi", pr.cmi},
                           {"trace_distance", pr.trace_distance}, {"fr_bound", pr.fr_bound},
                           {"slack", pr.slack}});
    }
  }
  r.details["trials"] = trials;
  r.details["max_exact_trace_distance"] = worst_exact;
  r.details["perturbed"] = perturbed;
  r.details["perturbed_above_fr_bound"] = fr_exceeded;
  tally.finish();
}

// ---------------------------------------------------------------- wb

void suite_wb(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  const int seeds = p.trials.value_or(200);
  attack::AttackConfig cfg;
  cfg.epsilon = p.epsilon.value_or(0.3);
  cfg.mode = attack::AttackMode::sampled;
  cfg.seed = p.seed;
  const auto scheme = protocols::make_scheme(p.scheme.value_or("S2"), p.n.value_or(2));
  attack::AttackSession session(scheme, cfg);
  const auto& family = session.family();
  std::vector<int> missed(static_cast<std::size_t>(seeds), 0);
  std::vector<std::size_t> heavy(static_cast<std::size_t>(seeds), 0);
  parallel_for(static_cast<std::size_t>(seeds), p.jobs, [&](std::size_t s) {
    auto rng = stream_rng(p.seed, s, 0x0b);
    const auto& h = family[std::uniform_int_distribution<std::size_t>(0, family.size() - 1)(rng)];
    const auto res = session.run(h, s);
    missed[s] = res.diagnostics.heavy_covered ? 0 : 1;
    heavy[s] = res.diagnostics.heavy_set_size;
  });
  int misses = 0;
  for (int v : missed) misses += v;
  const double rate = static_cast<double>(misses) / seeds;
  tally.check(cfg.epsilon - rate, 0.0, "Pr[W_B not in R_E] above epsilon");
  r.details["scheme"] = scheme.name;
  r.details["epsilon"] = cfg.epsilon;
  r.details["seeds"] = seeds;
  r.details["step1_reps"] = session.params().step1_reps;
  r.details["misses"] = misses;
  r.details["miss_rate"] = rate;
  r.details["max_heavy_set"] = *std::max_element(heavy.begin(), heavy.end());
  tally.finish();
}

// ---------------------------------------------------------------- view

void suite_view(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  attack::AttackConfig cfg;
  cfg.epsilon = p.epsilon.value_or(0.25);
  if (p.m) cfg.m = *p.m;
  const auto scheme = protocols::make_scheme(p.scheme.value_or("S1"), p.n.value_or(2));
  attack::AttackSession session(scheme, cfg);
  const auto results = attack::run_over_family(session, p.jobs);
  double worst = 0.0, mean = 0.0;
  for (const auto& res : results) {
    const double v = res.diagnostics.view_support_violation;
    worst = std::max(worst, v);
    mean += v / static_cast<double>(results.size());
    tally.check(2.0 * cfg.epsilon - v, 1e-9, "oracle " + res.oracle.to_bitstring());
  }
  r.details["scheme"] = scheme.name;
  r.details["epsilon"] = cfg.epsilon;
  r.details["max_violation"] = worst;
  r.details["mean_violation"] = mean;
  tally.finish();
}

// ---------------------------------------------------------------- key-compatible

void suite_key_compatible(const LemmaParams& p, LemmaReport& r) {
  Tally tally(r);
  attack::AttackConfig cfg;
  cfg.epsilon = p.epsilon.value_or(0.25);
  if (p.m) cfg.m = *p.m;
  const auto scheme = protocols::make_scheme(p.scheme.value_or("S1"), p.n.value_or(2));
  if (scheme.flavor != protocols::KeyFlavor::classical_pk) {
    throw InvalidArgument("key-compatible: classical-pk schemes only");
  }
  attack::AttackSession session(scheme, cfg);
  const auto& ka = session.ka();
  const int d = session.params().d;
  const auto results = attack::run_over_family(session, p.jobs);
  double incompatible_total = 0.0;
  for (const auto& res : results) {
    const Oracle& h = res.oracle;
    const std::string otag = "oracle " + h.to_bitstring();
    // Group branches by (sk, m0, sk'): one H~ per group.
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<const attack::AttackBranch*>> groups;
    for (const auto& b : res.branches) {
      if (!b.aborted) groups[{b.sk, b.m0, b.fake_sk}].push_back(&b);
    }
    for (const auto& [key, branches] : groups) {
      const auto& [sk, m0, fake] = key;
      const Oracle h_tilde = h.overwritten(branches.front()->overrides);
      const auto input = protocols::bob_input(ka, m0);
      const auto on_h = quantum_sim::run(ka.bob, h, input);
      const auto on_tilde = quantum_sim::run(ka.bob, h_tilde, input);
      const auto dist_h = protocols::field_distribution(ka.bob, on_h, {"kB", "ct"});
      const auto dist_t = protocols::field_distribution(ka.bob, on_tilde, {"kB", "ct"});
      double tv = 0.0, group_mass = 0.0, incompatible = 0.0;
      std::set<std::vector<std::string>> keys;
      for (const auto& [k, v] : dist_h) keys.insert(k);
      for (const auto& [k, v] : dist_t) keys.insert(k);
      for (const auto& k : keys) {
        const double a = dist_h.count(k) ? dist_h.at(k) : 0.0;
        const double b = dist_t.count(k) ? dist_t.at(k) : 0.0;
        tv += 0.5 * std::abs(a - b);
      }
      double q_sum = 0.0;
      if (ka.bob.d() > 0) {
        const auto q = quantum_sim::query_weights(ka.bob, h, input).weights;
        for (auto i : h.diff(h_tilde)) q_sum += q[i];
      }
      const double bound = 8.0 * std::sqrt(static_cast<double>(d)) * std::sqrt(q_sum);
      const std::string gtag = otag + " sk=" + sk + " m0=" + m0 + " sk'=" + fake;
      tally.check(bound - tv, 1e-8, gtag + ": TV(Bob on H~, Bob on H) above closeness bound");
      for (const auto* b : branches) {
        group_mass += b->probability;
        protocols::TranscriptView view{b->fake_sk, b->m0, b->k_b, b->m1, b->r_e};
        const bool compatible = protocols::is_compatible(ka, view, h_tilde, cfg.policy);
        if (compatible) {
          tally.check(b->success - 1.0, 1e-9, gtag + ": compatible view but k_E != k_B");
        } else {
          incompatible += b->probability;
        }
        // Gen's part: f(H~) != 0 in case A.
        if (b->case_tag == boolean_poly::ReprogramCase::A) {
          tally.require(protocols::gen_probability(scheme, h_tilde, b->fake_sk, b->m0) >
                            cfg.policy.support_threshold,
                        gtag + ": case A but Gen on H~ misses (sk', m0)");
        }
      }
      incompatible_total += incompatible / static_cast<double>(results.size());
      // Conditional on the group, Bob's outcome escapes SUPP(Bob on H~) with
      // probability <= 2 TV.
      if (group_mass > 0.0) {
        tally.check(2.0 * tv - incompatible / group_mass, 1e-9,
                    gtag + ": incompatible mass above 2 TV");
      }
    }
  }
  r.details["scheme"] = scheme.name;
  r.details["epsilon"] = cfg.epsilon;
  r.details["mean_incompatible_probability"] = incompatible_total;
  tally.finish();
}

struct Suite {
  const char* id;
  const char* usage;
  void (*run)(const LemmaParams&, LemmaReport&);
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> s{
      {"support", "--trials 1000", suite_support},
      {"bbbv", "--trials 500 --n 3 --d 3 (upper limits)", suite_bbbv},
      {"entropy-bound", "[--scheme S] [--n 1,2]", suite_entropy_bound},
      {"perm-invariance", "--trials 30 --t 3", suite_perm_invariance},
      {"chain-rule", "--trials 100", suite_chain_rule},
      {"ssa", "--dims 2,2,2 (or four dims for the conditional form) --trials 100", suite_ssa},
      {"poly-degree", "[--scheme S] [--n 1..3]", suite_poly_degree},
      {"alon", "--N 8 --trials 200", suite_alon},
      {"reprogram", "--N 10 --trials 200 [--m fixed m]", suite_reprogram},
      {"fr-recovery", "--trials 50", suite_fr_recovery},
      {"wb", "--scheme S2 --n 2 --epsilon 0.3 --trials 200 (seeds)", suite_wb},
      {"view", "--scheme S1 --n 2 --epsilon 0.25 [--m]", suite_view},
      {"key-compatible", "--scheme S1 --n 2 --epsilon 0.25 [--m]", suite_key_compatible},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

bool is_lemma_id(const std::string& id) {
  const auto& ids = lemma_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string lemma_usage() {
  std::string out = "lemma ids:\n";
  for (const auto& s : suites()) out += std::string("  ") + s.id + "  " + s.usage + "\n";
  return out;
}

LemmaReport verify_lemma(const std::string& id, const LemmaParams& params) {
  const auto& all = suites();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Suite& s) { return id == s.id; });
  if (it == all.end()) throw InvalidArgument("unknown lemma id '" + id + "'\n" + lemma_usage());
  LemmaReport r;
  r.id = id;
  const auto t0 = std::chrono::steady_clock::now();
  it->run(params, r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json to_json(const LemmaReport& r) {
  return {{"id", r.id},
          {"passed", r.passed},
          {"checks", r.checks},
          {"failures", r.failures},
          {"worst_slack", r.worst_slack},
          {"seconds", r.seconds},
          {"failure_samples", r.failure_samples},
          {"details", r.details}};
}

}  // namespace qromlab::harness
