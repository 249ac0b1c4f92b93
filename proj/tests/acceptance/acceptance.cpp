// Acceptance run: one PASS/FAIL line per criterion. Quantities the library
// reports are re-derived here with the brute-force code in
// tests/support/reference.hpp wherever that is feasible.
//
// usage: qromlab_acceptance [criterion ids...]   (default: all)

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/reference.hpp"
#include "qromlab/attack/attack.hpp"
#include "qromlab/boolean_poly/reprogram.hpp"
#include "qromlab/harness/random.hpp"
#include "qromlab/info_theory/entropy.hpp"
#include "qromlab/info_theory/recovery.hpp"
#include "qromlab/protocols/key_agreement.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

using namespace qromlab;
using quantum_sim::Oracle;

namespace {

// Tolerances, pinned.
constexpr double kSupportTol = 1e-12;
constexpr double kBbbvTol = 1e-8;
constexpr double kDegreeTol = 1e-9;
constexpr double kEntropyTol = 1e-9;
constexpr double kMarkovTol = 1e-7;
constexpr double kChainTol = 1e-7;
constexpr double kPetzTol = 1e-6;
constexpr double kCrossCheckTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::ostringstream notes;  // extra lines printed after the verdict
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

std::mt19937_64 rng_for(std::uint64_t criterion, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(criterion), static_cast<std::uint32_t>(k), 0xacce97u};
  return std::mt19937_64(seq);
}

ref::Dist random_dist(int size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ref::Dist d;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    if (u(rng) < 0.4 && i + 1 < size) continue;
    const double w = u(rng);
    d[quantum_sim::to_bitstring(static_cast<std::uint64_t>(i), 3)] = w;
    total += w;
  }
  for (auto& [k, v] : d) v /= total;
  return d;
}

// ---------------------------------------------------------------- 1

void support(Outcome& out) {
  int violations = 0, mismatches = 0;
  double worst = 0.0;
  const int pairs = 1000;
  for (int k = 0; k < pairs; ++k) {
    auto rng = rng_for(1, static_cast<std::uint64_t>(k));
    const int size = std::uniform_int_distribution<int>(1, 8)(rng);
    const auto p = random_dist(size, rng), q = random_dist(size, rng);
    const double tv = ref::tv(p, q), esc = ref::escape(p, q);
    const quantum_sim::OutputDistribution lp(p), lq(q);
    const double ltv = quantum_sim::tv_distance(lp, lq);
    const double lesc = quantum_sim::support_escape_probability(lp, lq);
    if (std::abs(ltv - tv) > kSupportTol || std::abs(lesc - esc) > kSupportTol) ++mismatches;
    if (lesc > 2.0 * ltv + kSupportTol) ++violations;
    if (tv > 0) worst = std::max(worst, esc / (2.0 * tv));
  }
  out.require(violations == 0, std::to_string(violations) + " violations");
  out.require(mismatches == 0, std::to_string(mismatches) + " library/reference mismatches");
  out.detail << pairs << " pairs, " << violations << " violations, max escape/(2TV) " << worst;
}

// ---------------------------------------------------------------- 2

void bbbv(Outcome& out) {
  int violations = 0, mismatches = 0;
  double worst_ratio = 0.0;
  const int triples = 500;
  for (int k = 0; k < triples; ++k) {
    auto rng = rng_for(2, static_cast<std::uint64_t>(k));
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const int d = std::uniform_int_distribution<int>(1, 3)(rng);
    const auto alg = harness::random_algorithm(n, 1, d, rng);
    const auto h = harness::random_oracle(n, rng);
    // Flip a random nonempty subset.
    std::map<std::uint64_t, int> flips;
    const auto size = h.size();
    const auto count = std::uniform_int_distribution<std::size_t>(1, size)(rng);
    while (flips.size() < count) {
      const auto i = std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng);
      flips[i] = 1 - h(i);
    }
    const auto h2 = h.overwritten(flips);
    const auto init = ref::zero_state(alg.layout().dimension());
    const auto a = ref::run(alg, h, init);
    const auto b = ref::run(alg, h2, init);
    double sum = 0.0;
    for (const auto& [i, v] : flips) sum += a.q[i];
    const double bound = 2.0 * std::sqrt(d) * std::sqrt(sum);
    const double dev = (a.final_state - b.final_state).norm();
    if (dev > bound + kBbbvTol) ++violations;
    const auto prof = quantum_sim::query_weights(alg, h, quantum_sim::AlgorithmInput{});
    const double lib_bound = quantum_sim::bbbv_deviation_bound(prof, h, h2, d);
    const double lib_dev = quantum_sim::state_deviation(quantum_sim::run(alg, h, quantum_sim::AlgorithmInput{}),
                                                        quantum_sim::run(alg, h2, quantum_sim::AlgorithmInput{}));
    if (std::abs(lib_bound - bound) > kCrossCheckTol || std::abs(lib_dev - dev) > kCrossCheckTol) ++mismatches;
    if (bound > 0) worst_ratio = std::max(worst_ratio, dev / bound);
  }
  out.require(violations == 0, std::to_string(violations) + " violations");
  out.require(mismatches == 0, std::to_string(mismatches) + " library/reference mismatches");
  out.detail << triples << " triples (n<=3, d<=3), " << violations << " violations, max dev/bound " << worst_ratio;
}

// ---------------------------------------------------------------- 3

std::vector<const quantum_sim::QueryAlgorithm*> algorithms(const protocols::QPKEScheme& s) {
  std::vector<const quantum_sim::QueryAlgorithm*> v{&s.gen, &s.enc, &s.dec};
  if (s.pkgen) v.push_back(&*s.pkgen);
  return v;
}

std::vector<std::string> inputs_of(const quantum_sim::QueryAlgorithm& alg, std::mt19937_64& rng) {
  const int w = alg.layout().width(alg.spec().classical_inputs);
  std::vector<std::string> v;
  if (w <= 3) {
    for (std::uint64_t x = 0; x < (1ull << w); ++x) v.push_back(quantum_sim::to_bitstring(x, w));
  } else {
    for (int k = 0; k < 6; ++k) {
      v.push_back(quantum_sim::to_bitstring(std::uniform_int_distribution<std::uint64_t>(0, (1ull << w) - 1)(rng), w));
    }
  }
  return v;
}

void degree(Outcome& out) {
  int polys = 0, violations = 0;
  double worst = 0.0;
  for (const auto& name : protocols::scheme_names()) {
    for (int n = 1; n <= 3; ++n) {
      const auto s = protocols::make_scheme(name, n);
      const auto oracles = quantum_sim::all_oracles(n);
      auto rng = rng_for(3, static_cast<std::uint64_t>(n));
      for (const auto* alg : algorithms(s)) {
        for (const auto& bits : inputs_of(*alg, rng)) {
          std::map<std::string, std::vector<double>> values;  // field|outcome -> p(h)
          for (std::size_t hi = 0; hi < oracles.size(); ++hi) {
            const auto st = quantum_sim::run(*alg, oracles[hi], bits);
            for (const auto& [field, regs] : alg->spec().outputs) {
              for (const auto& [o, p] : ref::measure(alg->layout(), st.amplitudes(), regs)) {
                auto& v = values[field + "|" + o];
                if (v.empty()) v.assign(oracles.size(), 0.0);
                v[hi] = p;
              }
            }
          }
          for (const auto& [key, v] : values) {
            // Oracle index hi = to_bits(), so bit i of hi is H(i): the Fourier
            // character over hi is prod_{i in S} x_i.
            const auto a = ref::fourier(v);
            ++polys;
            for (std::size_t mask = 0; mask < a.size(); ++mask) {
              if (std::popcount(mask) <= 2 * alg->d()) continue;
              worst = std::max(worst, std::abs(a[mask]));
              if (std::abs(a[mask]) >= kDegreeTol) ++violations;
            }
          }
        }
      }
    }
  }
  out.require(violations == 0, std::to_string(violations) + " coefficients above degree 2d");
  out.detail << polys << " acceptance polynomials (N<=8), " << violations << " violations, max |a_S| above 2d "
             << worst;
}

// ---------------------------------------------------------------- 4

boolean_poly::MultilinearPoly integer_poly(int n, int deg, std::mt19937_64& rng) {
  std::map<std::uint64_t, double> c;
  std::uniform_int_distribution<int> coef(-3, 3), var(0, n - 1);
  auto monomial = [&](int size) {
    std::uint64_t m = 0;
    while (std::popcount(m) < size) m |= 1ull << var(rng);
    return m;
  };
  c[monomial(deg)] = coef(rng) >= 0 ? 1.0 : -1.0;
  const int extra = std::uniform_int_distribution<int>(0, 8)(rng);
  for (int t = 0; t < extra; ++t) {
    const int v = coef(rng);
    if (v != 0) c[monomial(std::uniform_int_distribution<int>(0, deg)(rng))] = v;
  }
  return boolean_poly::MultilinearPoly(n, c);
}

void reprogram(Outcome& out) {
  int failures = 0, lib_rejects = 0, case_a = 0, case_b = 0;
  std::size_t max_mu = 0;
  const int trials = 200;
  for (int k = 0; k < trials; ++k) {
    auto rng = rng_for(4, static_cast<std::uint64_t>(k));
    const int n = std::uniform_int_distribution<int>(4, 10)(rng);
    const int deg = std::uniform_int_distribution<int>(1, 4)(rng);
    const int m = 1 + k % 3;
    const auto f = integer_poly(n, deg, rng);
    const auto o = boolean_poly::reprogram(f, m);
    const std::size_t N = 1ull << n;
    const int df = f.degree();
    bool ok = o.mu.size() <= static_cast<std::size_t>(m * df * df);
    max_mu = std::max(max_mu, o.mu.size());
    if (!boolean_poly::verify_reprogram_outcome(f, o, m)) ++lib_rejects;
    if (o.case_tag == boolean_poly::ReprogramCase::A) {
      ++case_a;
      for (std::uint64_t h = 0; h < N && ok; ++h) ok = ref::eval(f.coeffs(), ref::apply(o.mu.entries(), h)) != 0.0;
    } else {
      ++case_b;
      // g = f restricted by mu, recomputed from values.
      std::vector<double> vals(N);
      for (std::uint64_t h = 0; h < N; ++h) vals[h] = ref::eval(f.coeffs(), ref::apply(o.mu.entries(), h));
      const auto a = ref::fourier(vals);
      int dg = -1;
      for (std::size_t s = 0; s < N; ++s) {
        if (std::abs(a[s]) > 1e-9) dg = std::max(dg, std::popcount(s));
      }
      const auto& mons = o.disjoint_monomials;
      ok = ok && mons.size() > static_cast<std::size_t>(m);
      std::uint64_t seen = 0;
      for (auto s : mons) {
        ok = ok && (s & seen) == 0 && (s & o.mu.support_mask()) == 0 && std::popcount(s) == dg &&
             std::abs(a[s]) > 1e-9;
        seen |= s;
      }
      // Every point has m disjoint fixers, one inside each of the first m monomials.
      for (std::uint64_t h = 0; h < N && ok; ++h) {
        for (int l = 0; l < m && ok; ++l) {
          const auto s = mons[static_cast<std::size_t>(l)];
          std::vector<std::uint64_t> vars;
          for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
            if ((s >> i) & 1) vars.push_back(i);
          }
          bool found = false;
          for (std::uint64_t signs = 0; signs < (1ull << vars.size()) && !found; ++signs) {
            std::map<std::uint64_t, int> fix;
            for (std::size_t v = 0; v < vars.size(); ++v) fix[vars[v]] = (signs >> v) & 1 ? -1 : 1;
            // x^{mu_l . mu}: apply fixer, then mu on top (disjoint supports).
            found = ref::eval(f.coeffs(), ref::apply(o.mu.entries(), ref::apply(fix, h))) != 0.0;
          }
          ok = found;
        }
      }
    }
    if (!ok) ++failures;
  }
  out.require(failures == 0, std::to_string(failures) + " outcomes fail the reference check");
  out.require(lib_rejects == 0, std::to_string(lib_rejects) + " rejected by verify_reprogram_outcome");
  out.detail << trials << " polynomials (N<=10, deg<=4, m in {1,2,3}), case A " << case_a << ", case B " << case_b
             << ", max |mu| " << max_mu << ", " << failures << " failures";
}

// ---------------------------------------------------------------- 5

double oracle_averaged_entropy_gram(const quantum_sim::QueryAlgorithm& alg, int n) {
  // Eigenvalues of sum_H p |psi_H><psi_H| equal those of p <psi_H|psi_H'>.
  const auto oracles = quantum_sim::all_oracles(n);
  std::vector<ref::Vec> states;
  const auto init = quantum_sim::initial_state(alg, quantum_sim::AlgorithmInput{}).amplitudes();
  for (const auto& h : oracles) states.push_back(alg.d() > 0 ? ref::run(alg, h, init).final_state : alg.unitaries()[0] * init);
  const auto k = static_cast<Eigen::Index>(states.size());
  ref::Mat g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = states[static_cast<std::size_t>(i)].dot(states[static_cast<std::size_t>(j)]) / double(k);
  return ref::entropy_bits(g);
}

void entropy(Outcome& out) {
  int algs = 0, bound_viol = 0, markov_fail = 0, chain_fail = 0;
  double worst_chain = 0.0;
  for (const auto& name : protocols::scheme_names()) {
    for (int n = 1; n <= 3; ++n) {
      const auto s = protocols::make_scheme(name, n);
      for (const auto* alg : algorithms(s)) {
        // Zero-query algorithms see no oracle; their input width is the scheme's n.
        const int on = alg->d() > 0 ? alg->n_in() : n;
        const double ent = oracle_averaged_entropy_gram(*alg, on);
        ++algs;
        if (ent > 2.0 * alg->d() * (on + 1) + kEntropyTol) ++bound_viol;
      }
    }
  }
  // Markov prefix on symmetric copy states, t = 3.
  const int t = 3;
  for (int k = 0; k < 30; ++k) {
    auto rng = rng_for(5, static_cast<std::uint64_t>(k));
    const int dim = 4 << t;
    ref::Mat rho = ref::Mat::Zero(dim, dim);
    const int comps = std::uniform_int_distribution<int>(1, 4)(rng);
    double total = 0.0;
    for (int c = 0; c < comps; ++c) {
      const double w = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
      total += w;
      ref::Mat a = ref::Mat::Zero(2, 2), cc = ref::Mat::Zero(2, 2);
      const int av = std::uniform_int_distribution<int>(0, 1)(rng), cv = std::uniform_int_distribution<int>(0, 1)(rng);
      a(av, av) = 1.0;
      cc(cv, cv) = 1.0;
      const ref::Mat b = ref::random_density(2, 2, rng);
      ref::Mat term = ref::kron(a, cc);
      for (int i = 0; i < t; ++i) term = ref::kron(term, b);
      rho += w * term;
    }
    rho /= total;
    const info_theory::MultipartiteState st({{"A", 2}, {"C", 2}, {"B1", 2}, {"B2", 2}, {"B3", 2}}, rho);
    const auto res = info_theory::select_markov_prefix(st, {"A"}, {"C"}, {"B1", "B2", "B3"});
    const std::vector<int> dims{2, 2, 2, 2, 2};
    const double s_a = ref::entropy(rho, dims, {0});
    std::vector<int> cond{1};
    for (int i = 0; i < res.j; ++i) cond.push_back(2 + i);
    const double direct = ref::cmi(rho, dims, {4}, {0}, cond);
    bool ok = direct <= s_a / t + kMarkovTol && std::abs(direct - res.cmi_value) <= kCrossCheckTol;
    // Smallest qualifying j.
    for (int jj = 0; jj < res.j && ok; ++jj) {
      std::vector<int> c2{1};
      for (int i = 0; i < jj; ++i) c2.push_back(2 + i);
      ok = ref::cmi(rho, dims, {4}, {0}, c2) > s_a / t - kMarkovTol;
    }
    if (!ok) ++markov_fail;
  }
  // Chain rule on 100 random 4-qubit states.
  for (int k = 0; k < 100; ++k) {
    auto rng = rng_for(50, static_cast<std::uint64_t>(k));
    const ref::Mat rho = ref::random_density(16, std::uniform_int_distribution<int>(1, 16)(rng), rng);
    const info_theory::MultipartiteState st({{"A", 2}, {"C", 2}, {"B1", 2}, {"B2", 2}}, rho);
    const auto terms = info_theory::chain_rule_decomposition(st, {"A"}, {"C"}, {"B1", "B2"});
    const double direct = ref::cmi(rho, {2, 2, 2, 2}, {2, 3}, {0}, {1});
    const double err = std::abs(terms[0] + terms[1] - direct);
    worst_chain = std::max(worst_chain, err);
    if (err > kChainTol) ++chain_fail;
  }
  out.require(bound_viol == 0, std::to_string(bound_viol) + " algorithms above 2d(n+1)");
  out.require(markov_fail == 0, std::to_string(markov_fail) + " Markov prefix re-verifications failed");
  out.require(chain_fail == 0, std::to_string(chain_fail) + " chain-rule mismatches");
  out.detail << algs << " algorithms within 2d(n+1); 30 Markov prefixes re-verified (" << markov_fail
             << " failures); chain rule on 100 states, max error " << worst_chain;
}

// ---------------------------------------------------------------- 6

// Returns rho over (A, E, B) with dims and the E dimension.
ref::Mat markov_chain(int k, std::mt19937_64& rng, int& de) {
  if (k % 2 == 0) {
    de = std::uniform_int_distribution<int>(2, 3)(rng);
    ref::Mat rho = ref::Mat::Zero(4 * de, 4 * de);
    double total = 0.0;
    for (int e = 0; e < de; ++e) {
      const double w = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
      total += w;
      ref::Mat pe = ref::Mat::Zero(de, de);
      pe(e, e) = 1.0;
      rho += w * ref::kron(ref::kron(ref::random_density(2, 2, rng), pe), ref::random_density(2, 2, rng));
    }
    return rho / total;
  }
  // rho_{A EL} (x) rho_{ER B}: already ordered A, EL, ER, B.
  de = 4;
  return ref::kron(ref::random_density(4, 2, rng), ref::random_density(4, 2, rng));
}

double petz_td(const ref::Mat& rho, int da, int de, int db) {
  const std::vector<int> dims{da, de, db};
  const ref::Mat rho_ae = ref::partial_trace(rho, dims, {0, 1});
  const ref::Mat rho_e = ref::partial_trace(rho, dims, {1});
  const ref::Mat rho_eb = ref::partial_trace(rho, dims, {1, 2});
  const ref::Mat ib = ref::Mat::Identity(db, db), ia = ref::Mat::Identity(da, da);
  const ref::Mat left = ref::kron(ref::psd_power(rho_ae, 0.5, 1e-12), ib) *
                        ref::kron(ia, ref::kron(ref::psd_power(rho_e, -0.5, 1e-12), ib));
  const ref::Mat sigma = left * ref::kron(ia, rho_eb) * left.adjoint();
  return ref::trace_distance(sigma, rho);
}

void petz(Outcome& out) {
  int fails = 0;
  double worst_lib = 0.0, worst_ref = 0.0;
  std::ostringstream log;
  int above = 0, perturbed = 0;
  for (int k = 0; k < 50; ++k) {
    auto rng = rng_for(6, static_cast<std::uint64_t>(k));
    int de = 0;
    const ref::Mat rho = markov_chain(k, rng, de);
    info_theory::MultipartiteState st({{"A", 2}, {"E", de}, {"B", 2}}, rho);
    const auto rep = info_theory::evaluate_recovery(st, {"A"}, {"E"});
    const double td = petz_td(rho, 2, de, 2);
    worst_lib = std::max(worst_lib, rep.trace_distance);
    worst_ref = std::max(worst_ref, td);
    if (!(rep.trace_distance < kPetzTol && td < kPetzTol)) ++fails;
    for (double delta : {0.01, 0.05, 0.2}) {
      const int dim = static_cast<int>(rho.rows());
      const ref::Mat noisy = (1 - delta) * rho + delta * ref::random_density(dim, dim, rng);
      const info_theory::MultipartiteState ns({{"A", 2}, {"E", de}, {"B", 2}}, noisy);
      const auto pr = info_theory::evaluate_recovery(ns, {"A"}, {"E"});
      const double fr = std::sqrt(std::log(2.0) * std::max(0.0, ref::cmi(noisy, {2, de, 2}, {0}, {2}, {1})));
      ++perturbed;
      if (pr.trace_distance > fr) ++above;
      if (k < 2) log << "\n      chain " << k << " delta " << delta << ": TD " << pr.trace_distance << ", sqrt(ln2 CMI) " << fr;
    }
  }
  out.require(fails == 0, std::to_string(fails) + " exact chains with TD >= 1e-6");
  out.detail << "50 exact chains, max TD " << worst_lib << " (reference formula " << worst_ref << "); perturbed: "
             << above << "/" << perturbed << " with TD above sqrt(ln2 CMI) (logged, not asserted)";
  out.notes << log.str();
}

// ---------------------------------------------------------------- 7, 9

// Re-derives each branch's success from Dec on H~ and averages.
double rederived_success(const protocols::QPKEScheme& s, const attack::AttackResult& r) {
  double total = 0.0;
  for (const auto& b : r.branches) {
    if (b.aborted) continue;
    const auto ht = r.oracle.overwritten(b.overrides);
    total += b.probability * protocols::decryption_probability(s, ht, b.fake_sk, b.m1, b.k_b);
  }
  return total;
}

void end_to_end(Outcome& out) {
  for (const auto& name : {"S1", "S2"}) {
    const auto s = protocols::make_scheme(name, 2);
    for (double eps : {0.1, 0.25}) {
      attack::AttackConfig cfg;
      cfg.epsilon = eps;
      attack::AttackSession session(s, cfg);
      const auto results = attack::run_over_family(session);
      double mean = 0.0, mean_ref = 0.0;
      for (const auto& r : results) {
        mean += r.success_probability / results.size();
        mean_ref += rederived_success(s, r) / results.size();
      }
      out.require(results.size() == 16, "not all 16 oracles");
      out.require(s.d <= 2, std::string(name) + " has d > 2");
      out.require(mean >= 1 - 4 * eps, std::string(name) + " below 1-4eps");
      out.require(std::abs(mean - mean_ref) <= kCrossCheckTol, std::string(name) + " success not reproduced");
      out.detail << name << " eps=" << eps << ": " << mean << " (>= " << 1 - 4 * eps << ", re-derived " << mean_ref
                 << "); ";
    }
  }
}

void quantum_pk(Outcome& out) {
  const auto s = protocols::make_scheme("S3", 2);
  attack::AttackConfig cfg;
  cfg.epsilon = 0.25;
  attack::AttackSession session(s, cfg);
  const auto results = attack::run_over_family(session);
  double mean = 0.0, worst_mass = 0.0;
  for (const auto& r : results) {
    mean += r.success_probability / results.size();
    double mass = 0.0;
    for (const auto& b : r.branches) mass += b.probability;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
  }
  const double target = 1 - 4 * std::sqrt(cfg.epsilon);
  out.require(mean >= target, "below 1-4 sqrt(eps)");
  out.require(worst_mass < 1e-9, "branch mass not normalized");
  out.detail << results.size() << " oracles, success " << mean << " (>= " << target << ")";
}

// ---------------------------------------------------------------- 8, 10

void sampled_heavy(Outcome& out) {
  for (const auto& name : {"S1", "S2"}) {
    const auto s = protocols::make_scheme(name, 2);
    attack::AttackConfig cfg;
    cfg.epsilon = 0.3;
    cfg.mode = attack::AttackMode::sampled;
    attack::AttackSession session(s, cfg);
    const double threshold = std::pow(0.3, 4) / std::pow(session.params().d, 5);
    int misses = 0, disagreements = 0;
    const int seeds = 200;
    for (int k = 0; k < seeds; ++k) {
      auto rng = rng_for(8, static_cast<std::uint64_t>(k));
      const auto h = harness::random_oracle(2, rng);
      const auto r = session.run(h, static_cast<std::uint64_t>(k));
      const auto& b = r.branches.at(0);
      const auto init = quantum_sim::initial_state(session.ka().bob, protocols::bob_input(session.ka(), b.m0));
      const auto q = ref::run(session.ka().bob, h, init.amplitudes()).q;
      bool covered = true;
      for (std::uint64_t i = 0; i < q.size(); ++i) {
        if (q[i] >= threshold && (!b.r_e.entries().count(i) || b.r_e.entries().at(i) != h(i))) covered = false;
      }
      if (!covered) ++misses;
      if (covered != r.diagnostics.heavy_covered) ++disagreements;
    }
    const double rate = double(misses) / seeds;
    out.require(rate <= cfg.epsilon, std::string(name) + " miss rate above eps");
    out.require(disagreements == 0, std::string(name) + " library heavy_covered disagrees");
    out.detail << name << ": Pr[W_B not in R_E] = " << rate << " over " << seeds << " seeds (reps "
               << session.params().step1_reps << "); ";
  }
}

void budget(Outcome& out) {
  for (const auto& name : {"S1", "S2", "S3", "S4", "S5"}) {
    const auto s = protocols::make_scheme(name, 2);
    for (double eps : {0.25, 0.3}) {
      attack::AttackConfig cfg;
      cfg.epsilon = eps;
      cfg.mode = attack::AttackMode::sampled;
      attack::AttackSession session(s, cfg);
      const double d = session.params().d, n = 2;
      const double formula = std::pow(d, 7) * std::log(d / eps) / std::pow(eps, 4) + n * d * d / (eps * eps);
      std::uint64_t worst = 0;
      for (int k = 0; k < 10; ++k) {
        auto rng = rng_for(10, static_cast<std::uint64_t>(k));
        const auto r = session.run(harness::random_oracle(2, rng), static_cast<std::uint64_t>(k));
        worst = std::max(worst, r.diagnostics.queries->total());
      }
      out.require(static_cast<double>(worst) <= 10 * formula, std::string(name) + " over budget");
      if (eps == 0.3) out.detail << name << " " << worst << "/" << 10 * formula << "; ";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "support escape <= 2 TV", 5, support},
      {2, "BBBV hybrid bound", 120, bbbv},
      {3, "acceptance polynomial degree <= 2d", 60, degree},
      {4, "reprogramming win-win", 300, reprogram},
      {5, "entropy accumulation, Markov prefix, chain rule", 120, entropy},
      {6, "Petz recovery on Markov chains", 120, petz},
      {7, "exact attack on S1/S2, success >= 1-4eps", 600, end_to_end},
      {8, "sampled heavy-query coverage", 300, sampled_heavy},
      {9, "quantum-pk attack on S3, success >= 1-4sqrt(eps)", 600, quantum_pk},
      {10, "sampled query budget <= 10x formula", 300, budget},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_seconds, "runtime limit");
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.str().c_str(), secs, c.limit_seconds);
    if (!o.notes.str().empty()) std::printf("%s\n", o.notes.str().substr(1).c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
