#include "qromlab/attack/steps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>

#include "qromlab/boolean_poly/acceptance.hpp"
#include "qromlab/error.hpp"
#include "qromlab/quantum_sim/register_layout.hpp"

namespace qromlab::attack {

using boolean_poly::MultilinearPoly;
using boolean_poly::PartialAssignment;
using info_theory::Factor;
using info_theory::Factors;

bool HeavyQuerySet::contains(std::uint64_t i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

bool HeavyQuerySet::covered_by(const QueryRecord& record) const {
  for (auto i : members) {
    if (record.entries().count(i) == 0) return false;
  }
  return true;
}

HeavyQuerySet heavy_query_set(const std::vector<double>& weights, double threshold) {
  HeavyQuerySet s;
  s.threshold = threshold;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // Weights that equal the threshold in exact arithmetic land a few ulps
    // either side of it.
    if (weights[i] >= threshold * (1.0 - 1e-12)) s.members.push_back(i);
  }
  return s;
}

quantum_sim::AlgorithmInput bob_input(const KeyAgreement& ka, const FirstMessage& m0) {
  if (m0.state) return protocols::bob_input(ka, *m0.state);
  return protocols::bob_input(ka, m0.bits);
}

Step1Result step1_heavy_queries_exact(const KeyAgreement& ka, const FirstMessage& m0,
                                      const Oracle& oracle, const AttackParameters& params) {
  Step1Result r;
  if (ka.bob.d() == 0) return r;
  const auto profile = quantum_sim::query_weights(ka.bob, oracle, bob_input(ka, m0));
  for (auto i : heavy_query_set(profile.weights, params.heavy_threshold).members) {
    r.r_e.add(i, oracle(i));
  }
  return r;
}

namespace {

template <class Map>
typename Map::key_type sample_from(const Map& probs, std::mt19937_64& rng) {
  double total = 0.0;
  for (const auto& [k, p] : probs) total += std::max(p, 0.0);
  std::uniform_real_distribution<double> u(0.0, total);
  double x = u(rng);
  typename Map::key_type last{};
  for (const auto& [k, p] : probs) {
    if (p <= 0.0) continue;
    last = k;
    if (x < p) return k;
    x -= p;
  }
  return last;
}

std::uint64_t to_value(const std::string& bits) {
  return bits.empty() ? 0 : quantum_sim::from_bitstring(bits);
}

}  // namespace

Step1Result step1_heavy_queries_sampled(const KeyAgreement& ka, const FirstMessage& m0,
                                        OracleAccess& access, const AttackParameters& params,
                                        std::mt19937_64& rng) {
  Step1Result r;
  const int d = ka.bob.d();
  if (d == 0) return r;
  const auto input = bob_input(ka, m0);
  const std::string& qin = ka.bob.spec().query_input;
  std::uniform_int_distribution<int> pick_t(1, d);
  const std::uint64_t before = access.queries();
  for (std::int64_t rep = 0; rep < params.step1_reps; ++rep) {
    const int t = pick_t(rng);
    const auto state = access.run_until_query(ka.bob, input, t);
    const auto dist = quantum_sim::measure(state, {qin});
    const std::uint64_t i = quantum_sim::from_bitstring(sample_from(dist.probabilities(), rng));
    ++r.sample_counts[i];
    if (r.r_e.entries().count(i) == 0) r.r_e.add(i, access.classical_query(i));
  }
  r.repetitions = params.step1_reps;
  r.queries = access.queries() - before;
  return r;
}

namespace {

World make_world(const KeyAgreement& ka, const Oracle& h, std::size_t index, std::string sk,
                 double weight, const quantum_sim::AlgorithmInput& input,
                 const AttackParameters& params, bool exact_r_e) {
  World w;
  w.oracle_index = index;
  w.sk = std::move(sk);
  w.weight = weight;
  const auto state = quantum_sim::run(ka.bob, h, input);
  w.bob_state = state.amplitudes();
  if (ka.bob.d() > 0) {
    w.bob_weights = quantum_sim::query_weights(ka.bob, h, input).weights;
  } else {
    w.bob_weights.assign(h.size(), 0.0);
  }
  if (exact_r_e) {
    QueryRecord r;
    for (auto i : heavy_query_set(w.bob_weights, params.heavy_threshold).members) r.add(i, h(i));
    w.r_e_key = r.key();
  }
  return w;
}

}  // namespace

std::vector<World> classical_worlds(const KeyAgreement& ka, const std::vector<Oracle>& family,
                                    const std::string& m0, const AttackParameters& params,
                                    bool exact_r_e, const NumericPolicy& policy) {
  const auto& s = ka.scheme;
  const auto input = protocols::bob_input(ka, m0);
  const double prior = 1.0 / static_cast<double>(family.size());
  std::vector<World> out;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto gen_state = quantum_sim::run(s.gen, family[k], quantum_sim::AlgorithmInput{});
    for (const auto& [key, p] : protocols::field_distribution(s.gen, gen_state, {"sk", "pk"})) {
      if (key[1] != m0 || p <= policy.support_threshold) continue;
      out.push_back(make_world(ka, family[k], k, key[0], prior * p, input, params, exact_r_e));
    }
  }
  return out;
}

std::vector<World> quantum_worlds(const KeyAgreement& ka, const std::vector<Oracle>& family,
                                  const AttackParameters& params, bool exact_r_e,
                                  const NumericPolicy& policy) {
  const auto& s = ka.scheme;
  const double prior = 1.0 / static_cast<double>(family.size());
  std::vector<World> out;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto gen_state = quantum_sim::run(s.gen, family[k], quantum_sim::AlgorithmInput{});
    for (const auto& [sk, p] : quantum_sim::measure(gen_state, s.gen.output("sk"))) {
      if (p <= policy.support_threshold) continue;
      const auto pk = protocols::quantum_public_key(s, family[k], sk, policy);
      if (pk.pure.size() == 0) {
        throw InvalidArgument("attack: the quantum public key for sk=" + sk + " is not pure");
      }
      out.push_back(make_world(ka, family[k], k, sk, prior * p, protocols::bob_input(ka, pk),
                               params, exact_r_e));
    }
  }
  return out;
}

std::vector<World> condition_on_samples(std::vector<World> worlds,
                                        const std::vector<Oracle>& family,
                                        const Step1Result& step1, int d) {
  std::vector<World> kept;
  std::vector<double> loglik;
  for (auto& w : worlds) {
    if (!step1.r_e.consistent_with(family[w.oracle_index])) continue;
    double ll = std::log(w.weight);
    bool possible = true;
    for (const auto& [i, count] : step1.sample_counts) {
      const double q = w.bob_weights[i] / d;
      if (q <= 0.0) {
        possible = false;
        break;
      }
      ll += static_cast<double>(count) * std::log(q);
    }
    if (!possible) continue;
    loglik.push_back(ll);
    kept.push_back(std::move(w));
  }
  if (kept.empty()) throw InvariantViolation("attack: no world is consistent with the step-1 record");
  const double top = *std::max_element(loglik.begin(), loglik.end());
  for (std::size_t k = 0; k < kept.size(); ++k) kept[k].weight = std::exp(loglik[k] - top);
  return kept;
}

FakeKeyModel build_fake_key_model(std::vector<World> worlds, int sk_width,
                                  const AttackParameters& params, const AttackConfig& cfg) {
  if (worlds.empty()) throw InvalidArgument("build_fake_key_model: no worlds");
  double total = 0.0;
  for (const auto& w : worlds) total += w.weight;
  std::vector<double> weights;
  std::vector<std::uint64_t> a_values;
  std::vector<CVector> b_vectors;
  std::vector<std::string> keys;
  for (auto& w : worlds) {
    w.weight /= total;
    weights.push_back(w.weight);
    a_values.push_back(to_value(w.sk));
    b_vectors.push_back(w.bob_state);
    keys.push_back(w.r_e_key);
  }
  std::vector<std::string> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::uint64_t> c_values;
  for (const auto& k : keys) {
    c_values.push_back(static_cast<std::uint64_t>(
        std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin()));
  }

  info_theory::ProductMixture mix(weights);
  mix.add_classical("A", a_values);
  mix.add_vectors("B", b_vectors);
  mix.add_classical("C", c_values);

  const Factors a{{"A", 1}};
  const Factors b{{"B", 1}};
  auto e_of = [](int j) {
    Factors e{{"C", 1}};
    if (j > 0) e.push_back({"B", j});
    return e;
  };
  const double s_a = mix.entropy(a, cfg.policy);
  auto markov = info_theory::select_markov_prefix(
      s_a, params.copies_t, [&](int j) { return mix.cmi(a, b, e_of(j), cfg.policy); }, false);
  auto recovery = info_theory::recover_from_mixture(mix, a, e_of(markov.j), b, cfg.recovery,
                                                    cfg.policy, cfg.grid);
  return FakeKeyModel{std::move(worlds), std::move(distinct), std::move(markov),
                      std::move(recovery), sk_width};
}

FakeKeyDistribution fake_key_distribution(const FakeKeyModel& model, const CVector& bob_state,
                                          const std::string& r_e_key) {
  const auto K = static_cast<Eigen::Index>(model.worlds.size());
  const int j = model.markov.j;
  CVector overlaps(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto& w = model.worlds[static_cast<std::size_t>(k)];
    overlaps(k) = w.r_e_key == r_e_key ? std::pow(w.bob_state.dot(bob_state), j) : Complex(0.0);
  }
  // Coordinates x of Eve's register in the span basis: x_k^dag x = <v_k|y>.
  const CMatrix& xe = model.recovery.e_coordinates;
  const CMatrix lhs = xe.adjoint();
  const CVector x = lhs.completeOrthogonalDecomposition().solve(overlaps);

  FakeKeyDistribution out;
  const auto probs = model.recovery.channel.a_distribution(x);
  const auto& values = model.recovery.a_values;
  double kept = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (probs[a] <= 0.0) continue;
    out.keys[quantum_sim::to_bitstring(values[a], model.sk_width)] += probs[a];
    kept += probs[a];
  }
  out.abort = std::max(0.0, 1.0 - kept);
  return out;
}

PartialAssignment as_assignment(const QueryRecord& record) {
  std::map<std::uint64_t, int> entries;
  for (const auto& [i, v] : record.entries()) entries[i] = v ? -1 : 1;
  return PartialAssignment(std::move(entries));
}

std::map<std::uint64_t, int> oracle_overrides(const PartialAssignment& mu) {
  std::map<std::uint64_t, int> out;
  for (const auto& [i, v] : mu.entries()) out[i] = (1 - v) / 2;
  return out;
}

ReprogramPlan plan_reprogramming(const KeyAgreement& ka, const std::string& fake_sk,
                                 const std::string& m0, const QueryRecord& r_e,
                                 const AttackParameters& params, const NumericPolicy& policy) {
  boolean_poly::TargetOutcome target{{"sk", fake_sk}};
  if (!m0.empty()) target["pk"] = m0;
  const PartialAssignment restriction = as_assignment(r_e);
  ReprogramPlan plan;
  plan.f = boolean_poly::extract_acceptance_poly(ka.scheme.gen, target,
                                                 quantum_sim::AlgorithmInput{}, restriction, policy, 1,
                                                 ka.scheme.n);
  if (plan.f.is_zero()) {
    plan.aborted = true;
    return plan;
  }
  auto outcome = boolean_poly::reprogram(plan.f, params.m);
  for (auto i : outcome.mu.support()) {
    if (restriction.contains(i)) {
      throw InvariantViolation("attack: reprogramming touched recorded index " + std::to_string(i));
    }
  }
  const auto cap = static_cast<std::size_t>(params.m) * 4u * static_cast<std::size_t>(params.d) *
                   static_cast<std::size_t>(params.d);
  if (outcome.mu.size() > cap) {
    throw InvariantViolation("attack: |mu| = " + std::to_string(outcome.mu.size()) +
                             " exceeds m (2d)^2 = " + std::to_string(cap));
  }
  plan.overrides = oracle_overrides(outcome.mu);
  plan.outcome = std::move(outcome);
  return plan;
}

CaseBCertificate case_b_certificate(const MultilinearPoly& f, const PartialAssignment& mu, int m,
                                    const Oracle& h_tilde, const std::vector<double>& dec_weights,
                                    std::uint64_t excluded_mask) {
  const int N = f.num_vars();
  if (N > 20) throw SizeLimitExceeded("case_b_certificate: exhaustive search needs N <= 20");
  const int deg = f.degree();
  const std::uint64_t blocked = mu.support_mask() | excluded_mask;
  const std::uint64_t h = h_tilde.to_bits();

  std::vector<PartialAssignment> candidates;
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
    const int k = std::popcount(mask);
    if (k > deg || (mask & blocked) != 0) continue;
    std::vector<std::uint64_t> vars;
    for (int i = 0; i < N; ++i) {
      if ((mask >> i) & 1U) vars.push_back(static_cast<std::uint64_t>(i));
    }
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
      std::map<std::uint64_t, int> entries;
      for (int v = 0; v < k; ++v) {
        entries[vars[static_cast<std::size_t>(v)]] = ((pattern >> (k - 1 - v)) & 1U) ? -1 : 1;
      }
      PartialAssignment fixer(std::move(entries));
      if (f.nonzero_at(fixer.apply(h))) {
        candidates.push_back(std::move(fixer));
        masks.push_back(mask);
        break;
      }
    }
  }

  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::uint64_t)> dfs = [&](std::size_t from, std::uint64_t used) {
    if (static_cast<int>(chosen.size()) == m) return true;
    for (std::size_t c = from; c < candidates.size(); ++c) {
      if (masks[c] & used) continue;
      chosen.push_back(c);
      if (dfs(c + 1, used | masks[c])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(0, 0)) {
    throw InvariantViolation("case_b_certificate: fewer than m = " + std::to_string(m) +
                             " disjoint fixers exist");
  }

  CaseBCertificate cert;
  for (auto c : chosen) {
    double w = 0.0;
    for (auto i : candidates[c].support()) w += dec_weights.at(i);
    cert.fixers.push_back(candidates[c]);
    cert.fixer_weights.push_back(w);
  }
  cert.l_star = static_cast<int>(
      std::min_element(cert.fixer_weights.begin(), cert.fixer_weights.end()) -
      cert.fixer_weights.begin());
  cert.h_prime = h_tilde.overwritten(oracle_overrides(cert.fixers[static_cast<std::size_t>(cert.l_star)]));
  return cert;
}

quantum_sim::AlgorithmInput dec_input(const KeyAgreement& ka, const std::string& sk,
                                      const std::string& m1, const CMatrix* m1_state) {
  const auto& dec = ka.scheme.dec;
  if (m1_state == nullptr) return protocols::classical_input(dec, sk + m1);
  auto in = quantum_sim::parse_classical_input(dec, sk);
  quantum_sim::QuantumInput q;
  q.registers = dec.spec().quantum_inputs;
  q.density = *m1_state;
  in.quantum.push_back(std::move(q));
  return in;
}

CaseBCheck check_case_b(const KeyAgreement& ka, const ReprogramPlan& plan,
                        const CaseBCertificate& cert, const Oracle& h_tilde,
                        const quantum_sim::AlgorithmInput& dec_in, const AttackParameters& params) {
  const auto& dec = ka.scheme.dec;
  CaseBCheck c;
  c.tv = quantum_sim::tv_distance(quantum_sim::output_distribution(dec, cert.h_prime, dec_in, "m"),
                                  quantum_sim::output_distribution(dec, h_tilde, dec_in, "m"));
  const double d = params.d;
  const double w = cert.fixer_weights.at(static_cast<std::size_t>(cert.l_star));
  c.instance_bound = 8.0 * std::sqrt(d) * std::sqrt(std::max(w, 0.0));
  c.pigeonhole_bound = 8.0 * std::sqrt(d) * std::sqrt(d / static_cast<double>(params.m));
  c.holds = c.tv <= c.instance_bound + 1e-8;
  c.h_prime_valid = plan.f.nonzero_at(cert.h_prime.to_bits());
  return c;
}

}  // namespace qromlab::attack
