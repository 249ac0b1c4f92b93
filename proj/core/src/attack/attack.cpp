#include "qromlab/attack/attack.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qromlab/error.hpp"
#include "qromlab/parallel.hpp"
#include "qromlab/rng.hpp"

namespace qromlab::attack {

using boolean_poly::ReprogramCase;

namespace {

enum Stream : std::uint64_t { kHonest = 0, kStep1 = 1, kStep2 = 2, kStep3 = 3 };

template <class Map>
typename Map::key_type draw(const Map& probs, std::mt19937_64& rng) {
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

int bob_query_count(const KeyAgreement& ka) {
  return std::max({ka.scheme.gen.d(), ka.bob.d(), ka.scheme.dec.d()});
}

// 8 sqrt(d) sqrt(sum of q_i over the reprogrammed entries that changed H).
double closeness_bound(const std::vector<double>& q, const Oracle& h, const Oracle& h_tilde,
                       int d) {
  double s = 0.0;
  for (auto i : h.diff(h_tilde)) s += q[i];
  return 8.0 * std::sqrt(static_cast<double>(d)) * std::sqrt(s);
}

}  // namespace

struct AttackSession::MessageInfo {
  struct PerOracle {
    std::string r_e_key;
    std::set<std::string> sks;
    std::set<std::pair<std::string, std::string>> bob_support;  // (kB, ct)
  };
  std::vector<PerOracle> oracles;
};

AttackSession::AttackSession(protocols::QPKEScheme scheme, AttackConfig cfg, unsigned jobs)
    : ka_(protocols::qpke_to_ka(scheme)), cfg_(std::move(cfg)) {
  cfg_.validate();
  if (ka_.scheme.flavor == protocols::KeyFlavor::quantum_pk && ka_.scheme.pkgen &&
      ka_.scheme.pkgen->d() != 0) {
    throw InvalidArgument("attack: pkgen of scheme '" + ka_.scheme.name +
                          "' queries the oracle; only zero-query pkgen is supported");
  }
  family_ = protocols::oracle_family(ka_.scheme);
  const auto completeness = protocols::check_perfect_completeness(ka_.scheme, family_, cfg_.policy, jobs);
  if (!completeness.perfect) {
    throw InvalidArgument("attack: scheme '" + ka_.scheme.name +
                          "' is not perfectly complete (worst success " +
                          std::to_string(completeness.worst_success) + ")");
  }
  params_ = resolve(cfg_, ka_.scheme.n, bob_query_count(ka_));
}

const FakeKeyModel& AttackSession::exact_model(const std::string& m0) const {
  {
    std::lock_guard lock(mutex_);
    auto it = models_.find(m0);
    if (it != models_.end()) return *it->second;
  }
  auto worlds = ka_.scheme.flavor == protocols::KeyFlavor::quantum_pk
                    ? quantum_worlds(ka_, family_, params_, true, cfg_.policy)
                    : classical_worlds(ka_, family_, m0, params_, true, cfg_.policy);
  auto model = std::make_shared<const FakeKeyModel>(
      build_fake_key_model(std::move(worlds), ka_.scheme.sk_width(), params_, cfg_));
  std::lock_guard lock(mutex_);
  return *models_.emplace(m0, std::move(model)).first->second;
}

const AttackSession::MessageInfo& AttackSession::message_info(const std::string& m0) const {
  {
    std::lock_guard lock(mutex_);
    auto it = messages_.find(m0);
    if (it != messages_.end()) return *it->second;
  }
  auto info = std::make_shared<MessageInfo>();
  const auto input = protocols::bob_input(ka_, m0);
  for (const auto& h : family_) {
    MessageInfo::PerOracle po;
    const auto gen_state = quantum_sim::run(ka_.scheme.gen, h, quantum_sim::AlgorithmInput{});
    for (const auto& [key, p] : protocols::field_distribution(ka_.scheme.gen, gen_state, {"sk", "pk"})) {
      if (key[1] == m0 && p > cfg_.policy.support_threshold) po.sks.insert(key[0]);
    }
    if (!po.sks.empty()) {
      const auto bob_state = quantum_sim::run(ka_.bob, h, input);
      for (const auto& [key, p] : protocols::field_distribution(ka_.bob, bob_state, {"kB", "ct"})) {
        if (p > cfg_.policy.support_threshold) po.bob_support.insert({key[0], key[1]});
      }
      po.r_e_key = step1_heavy_queries_exact(ka_, FirstMessage{m0, std::nullopt}, h, params_).r_e.key();
    }
    info->oracles.push_back(std::move(po));
  }
  std::lock_guard lock(mutex_);
  return *messages_.emplace(m0, std::move(info)).first->second;
}

const ReprogramPlan& AttackSession::plan(const std::string& fake_sk, const std::string& m0,
                                         const QueryRecord& r_e) const {
  const std::string key = fake_sk + "|" + m0 + "|" + r_e.key();
  {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return *it->second;
  }
  auto p = std::make_shared<const ReprogramPlan>(
      plan_reprogramming(ka_, fake_sk, m0, r_e, params_, cfg_.policy));
  std::lock_guard lock(mutex_);
  return *plans_.emplace(key, std::move(p)).first->second;
}

namespace {

AttackResult base_result(const KeyAgreement& ka, const AttackConfig& cfg,
                         const AttackParameters& params, const Oracle& oracle) {
  AttackResult r;
  r.scheme = ka.scheme.name;
  r.n = ka.scheme.n;
  r.mode = cfg.mode;
  r.params = params;
  r.seed = cfg.seed;
  r.oracle = oracle;
  return r;
}

void finish_exact(AttackResult& r) {
  double success = 0.0, aborted = 0.0, case_a = 0.0, mu = 0.0, live = 0.0, outside = 0.0;
  const AttackBranch* best = nullptr;
  for (const auto& b : r.branches) {
    success += b.probability * b.success;
    if (!b.view_in_support) outside += b.probability;
    if (b.aborted) {
      aborted += b.probability;
    } else {
      live += b.probability;
      mu += b.probability * b.mu_size;
      if (b.case_tag == ReprogramCase::A) case_a += b.probability;
      r.diagnostics.max_mu_size = std::max(r.diagnostics.max_mu_size, b.mu_size);
    }
    if (best == nullptr || b.probability > best->probability) best = &b;
  }
  r.success_probability = success;
  r.abort_probability = aborted;
  r.case_a_probability = case_a;
  r.diagnostics.mean_mu_size = live > 0.0 ? mu / live : 0.0;
  r.diagnostics.view_support_violation = outside;
  if (best != nullptr) {
    r.k_b = best->k_b;
    r.aborted = best->aborted;
    r.case_tag = best->case_tag;
    r.success = best->success >= 0.5;
    r.k_e = best->aborted ? -1 : (r.success ? best->k_b : 1 - best->k_b);
  }
}

// Step-2 figures of a model, accumulated with weight p.
void add_model_diagnostics(AttackDiagnostics& d, const FakeKeyModel& model, double p) {
  const auto& rep = model.recovery.report;
  d.cmi += p * rep.cmi;
  d.recovery_td += p * rep.trace_distance;
  d.max_recovery_td = std::max(d.max_recovery_td, rep.trace_distance);
  d.fr_bound += p * rep.fr_bound;
  d.entropy_S_A += p * model.markov.entropy_S_A;
  d.markov_j = std::max(d.markov_j, model.markov.j);
}

}  // namespace

AttackResult AttackSession::run_exact_classical(const Oracle& oracle) const {
  const auto& s = ka_.scheme;
  const double thr = cfg_.policy.support_threshold;
  AttackResult res = base_result(ka_, cfg_, params_, oracle);
  auto& diag = res.diagnostics;

  const auto gen_state = quantum_sim::run(s.gen, oracle, quantum_sim::AlgorithmInput{});
  for (const auto& [key, p] : protocols::field_distribution(s.gen, gen_state, {"sk", "pk"})) {
    if (p <= thr) continue;
    const std::string& sk = key[0];
    const std::string& m0 = key[1];
    const FirstMessage fm{m0, std::nullopt};
    const auto input = bob_input(ka_, fm);
    const FakeKeyModel& model = exact_model(m0);
    const MessageInfo& info = message_info(m0);
    add_model_diagnostics(diag, model, p);

    const auto step1 = step1_heavy_queries_exact(ka_, fm, oracle, params_);
    diag.r_e_size = std::max(diag.r_e_size, step1.r_e.size());
    std::vector<double> q(oracle.size(), 0.0);
    if (ka_.bob.d() > 0) q = quantum_sim::query_weights(ka_.bob, oracle, input).weights;
    diag.heavy_set_size =
        std::max(diag.heavy_set_size, heavy_query_set(q, params_.heavy_threshold).members.size());

    const auto bob_state = quantum_sim::run(ka_.bob, oracle, input);
    const auto bob_dist = protocols::field_distribution(ka_.bob, bob_state, {"kB", "ct"});
    const auto fake = fake_key_distribution(model, bob_state.amplitudes(), step1.r_e.key());

    auto view_ok = [&](const std::string& fsk, const std::string& kb, const std::string& m1) {
      for (const auto& po : info.oracles) {
        if (po.sks.count(fsk) && po.bob_support.count({kb, m1}) && po.r_e_key == step1.r_e.key()) {
          return true;
        }
      }
      return false;
    };

    for (const auto& [bk, qb] : bob_dist) {
      if (qb <= thr || fake.abort <= thr) continue;
      AttackBranch b{sk, m0, bk[0] == "1" ? 1 : 0, bk[1], "", p * qb * fake.abort, true};
      b.view_in_support = false;
      b.r_e = step1.r_e;
      res.branches.push_back(std::move(b));
    }
    for (const auto& [fsk, pa] : fake.keys) {
      if (pa <= thr) continue;
      const ReprogramPlan& pl = plan(fsk, m0, step1.r_e);
      const Oracle h_tilde = pl.aborted ? oracle : oracle.overwritten(pl.overrides);
      if (!pl.aborted) {
        const auto tilde_state = quantum_sim::run(ka_.bob, h_tilde, input);
        double tv = 0.0;
        const auto tilde_dist = protocols::field_distribution(ka_.bob, tilde_state, {"kB", "ct"});
        std::set<std::vector<std::string>> keys;
        for (const auto& [k, v] : bob_dist) keys.insert(k);
        for (const auto& [k, v] : tilde_dist) keys.insert(k);
        for (const auto& k : keys) {
          const double a = bob_dist.count(k) ? bob_dist.at(k) : 0.0;
          const double c = tilde_dist.count(k) ? tilde_dist.at(k) : 0.0;
          tv += 0.5 * std::abs(a - c);
        }
        const double bound = closeness_bound(q, oracle, h_tilde, params_.d);
        if (tv - bound > diag.bob_tv - diag.bob_tv_bound || diag.bob_tv_bound == 0.0) {
          diag.bob_tv = tv;
          diag.bob_tv_bound = bound;
        }
        if (tv > bound + 1e-8) diag.bob_closeness_holds = false;
      }
      for (const auto& [bk, qb] : bob_dist) {
        if (qb <= thr) continue;
        AttackBranch b;
        b.sk = sk;
        b.m0 = m0;
        b.k_b = bk[0] == "1" ? 1 : 0;
        b.m1 = bk[1];
        b.fake_sk = fsk;
        b.probability = p * qb * pa;
        b.view_in_support = view_ok(fsk, bk[0], bk[1]);
        b.r_e = step1.r_e;
        b.overrides = pl.overrides;
        b.aborted = pl.aborted;
        if (!pl.aborted) {
          b.case_tag = pl.outcome->case_tag;
          b.mu_size = static_cast<int>(pl.outcome->mu.size());
          b.success = protocols::decryption_probability(s, h_tilde, fsk, b.m1, b.k_b);
          if (b.case_tag == ReprogramCase::B) {
            const auto dec_in = dec_input(ka_, fsk, b.m1, nullptr);
            const auto w = quantum_sim::query_weights(s.dec, h_tilde, dec_in).weights;
            const auto cert = case_b_certificate(pl.f, pl.outcome->mu, params_.m, h_tilde, w,
                                                 as_assignment(step1.r_e).support_mask());
            diag.case_b_checks.push_back(check_case_b(ka_, pl, cert, h_tilde, dec_in, params_));
          }
        }
        res.branches.push_back(std::move(b));
      }
    }
  }
  finish_exact(res);
  return res;
}

AttackResult AttackSession::run_exact_quantum(const Oracle& oracle) const {
  const auto& s = ka_.scheme;
  const double thr = cfg_.policy.support_threshold;
  AttackResult res = base_result(ka_, cfg_, params_, oracle);
  auto& diag = res.diagnostics;
  const FakeKeyModel& model = exact_model("");

  const auto gen_state = quantum_sim::run(s.gen, oracle, quantum_sim::AlgorithmInput{});
  std::vector<std::string> sks;
  std::vector<double> ps;
  std::vector<CVector> pks;
  std::vector<FakeKeyDistribution> fakes;
  for (const auto& [sk, p] : quantum_sim::measure(gen_state, s.gen.output("sk"))) {
    if (p <= thr) continue;
    add_model_diagnostics(diag, model, p);
    const auto pk = protocols::quantum_public_key(s, oracle, sk, cfg_.policy);
    const FirstMessage fm{"", pk};
    const auto input = bob_input(ka_, fm);
    const auto step1 = step1_heavy_queries_exact(ka_, fm, oracle, params_);
    diag.r_e_size = std::max(diag.r_e_size, step1.r_e.size());
    diag.heavy_set_size = diag.r_e_size;
    const auto bob_state = quantum_sim::run(ka_.bob, oracle, input);
    const auto fake = fake_key_distribution(model, bob_state.amplitudes(), step1.r_e.key());
    sks.push_back(sk);
    ps.push_back(p);
    pks.push_back(pk.pure);
    fakes.push_back(fake);

    for (int kb = 0; kb < 2; ++kb) {
      const auto [cond, qb] = quantum_sim::condition_on(bob_state, {"kB"}, static_cast<std::uint64_t>(kb));
      if (qb <= thr) continue;
      const CMatrix ct = quantum_sim::reduced_density(cond, ka_.bob.output("ct"));
      if (fake.abort > thr) {
        AttackBranch b{sk, "|pk>", kb, "", "", p * qb * fake.abort, true};
        res.branches.push_back(std::move(b));
      }
      for (const auto& [fsk, pa] : fake.keys) {
        if (pa <= thr) continue;
        const ReprogramPlan& pl = plan(fsk, "", step1.r_e);
        AttackBranch b;
        b.sk = sk;
        b.m0 = "|pk>";
        b.k_b = kb;
        b.fake_sk = fsk;
        b.probability = p * qb * pa;
        b.r_e = step1.r_e;
        b.overrides = pl.overrides;
        b.aborted = pl.aborted;
        if (!pl.aborted) {
          const Oracle h_tilde = oracle.overwritten(pl.overrides);
          b.case_tag = pl.outcome->case_tag;
          b.mu_size = static_cast<int>(pl.outcome->mu.size());
          b.success = protocols::decryption_probability(s, h_tilde, fsk, ct, kb);
          if (b.case_tag == ReprogramCase::B) {
            const auto dec_in = dec_input(ka_, fsk, "", &ct);
            const auto w = quantum_sim::query_weights(s.dec, h_tilde, dec_in).weights;
            const auto cert = case_b_certificate(pl.f, pl.outcome->mu, params_.m, h_tilde, w,
                                                 as_assignment(step1.r_e).support_mask());
            diag.case_b_checks.push_back(check_case_b(ka_, pl, cert, h_tilde, dec_in, params_));
          }
        }
        res.branches.push_back(std::move(b));
      }
    }
  }

  // (sk', |m0>) against (sk, |m0>): block-diagonal in the classical key, so
  // the trace norm splits into one signed ensemble of pk vectors per key.
  const auto K = static_cast<Eigen::Index>(sks.size());
  CMatrix gram(K, K);
  for (Eigen::Index a = 0; a < K; ++a) {
    for (Eigen::Index b = 0; b < K; ++b) gram(a, b) = pks[static_cast<std::size_t>(a)].dot(pks[static_cast<std::size_t>(b)]);
  }
  std::set<std::string> symbols(sks.begin(), sks.end());
  for (const auto& f : fakes) {
    for (const auto& [k, v] : f.keys) symbols.insert(k);
  }
  symbols.insert("");  // abort
  double td = 0.0;
  for (const auto& sym : symbols) {
    std::vector<double> coeff;
    for (std::size_t k = 0; k < sks.size(); ++k) {
      const auto& f = fakes[k];
      const double fake_p = sym.empty() ? f.abort : (f.keys.count(sym) ? f.keys.at(sym) : 0.0);
      coeff.push_back(ps[k] * ((sks[k] == sym ? 1.0 : 0.0) - fake_p));
    }
    td += info_theory::signed_ensemble_trace_norm(coeff, gram, cfg_.policy.eigenvalue_clamp);
  }
  diag.uncompute_td = td;
  finish_exact(res);
  return res;
}

AttackResult AttackSession::run_sampled(const Oracle& oracle, std::uint64_t trial) const {
  const auto& s = ka_.scheme;
  const bool quantum = s.flavor == protocols::KeyFlavor::quantum_pk;
  AttackResult res = base_result(ka_, cfg_, params_, oracle);
  res.trial = trial;
  auto& diag = res.diagnostics;

  // Honest parties, with full access to H.
  auto honest = stream_rng(cfg_.seed, trial, kHonest);
  const auto gen_state = quantum_sim::run(s.gen, oracle, quantum_sim::AlgorithmInput{});
  FirstMessage fm;
  std::string sk;
  if (quantum) {
    sk = draw(quantum_sim::measure(gen_state, s.gen.output("sk")).probabilities(), honest);
    fm.state = protocols::quantum_public_key(s, oracle, sk, cfg_.policy);
  } else {
    const auto key = draw(protocols::field_distribution(s.gen, gen_state, {"sk", "pk"}), honest);
    sk = key[0];
    fm.bits = key[1];
  }
  const auto input = bob_input(ka_, fm);
  const auto bob_state = quantum_sim::run(ka_.bob, oracle, input);
  std::string m1;
  CMatrix ct_state;
  if (quantum) {
    res.k_b = quantum_sim::measure(bob_state, {"kB"}).probabilities().size() > 0
                  ? (draw(quantum_sim::measure(bob_state, {"kB"}).probabilities(), honest) == "1")
                  : 0;
    const auto cond = quantum_sim::condition_on(bob_state, {"kB"}, static_cast<std::uint64_t>(res.k_b)).first;
    ct_state = quantum_sim::reduced_density(cond, ka_.bob.output("ct"));
  } else {
    const auto key = draw(protocols::field_distribution(ka_.bob, bob_state, {"kB", "ct"}), honest);
    res.k_b = key[0] == "1" ? 1 : 0;
    m1 = key[1];
  }
  std::vector<double> q(oracle.size(), 0.0);
  if (ka_.bob.d() > 0) q = quantum_sim::query_weights(ka_.bob, oracle, input).weights;
  const auto heavy = heavy_query_set(q, params_.heavy_threshold);
  diag.heavy_set_size = heavy.members.size();

  // Eve, through the audit shim only.
  OracleAccess access(oracle);
  QueryCounts counts;
  counts.budget = 10.0 * query_formula(params_.n, params_.d, params_.epsilon);
  auto rng1 = stream_rng(cfg_.seed, trial, kStep1);
  const auto step1 = step1_heavy_queries_sampled(ka_, fm, access, params_, rng1);
  counts.step1 = step1.queries;
  diag.r_e_size = step1.r_e.size();
  diag.heavy_covered = heavy.covered_by(step1.r_e);

  std::vector<World> worlds = quantum ? quantum_worlds(ka_, family_, params_, false, cfg_.policy)
                                      : classical_worlds(ka_, family_, fm.bits, params_, false, cfg_.policy);
  worlds = condition_on_samples(std::move(worlds), family_, step1, std::max(1, ka_.bob.d()));
  const FakeKeyModel model = build_fake_key_model(std::move(worlds), s.sk_width(), params_, cfg_);
  add_model_diagnostics(diag, model, 1.0);

  std::uint64_t before = access.queries();
  const auto copies = access.run_copies(ka_.bob, input, params_.copies_t);
  counts.step2 = access.queries() - before;
  const auto fake = fake_key_distribution(model, copies.amplitudes(), "");
  std::map<std::string, double> choices = fake.keys;
  choices[""] = fake.abort;
  auto rng2 = stream_rng(cfg_.seed, trial, kStep2);
  const std::string fsk = draw(choices, rng2);

  AttackBranch b;
  b.sk = sk;
  b.m0 = quantum ? "|pk>" : fm.bits;
  b.k_b = res.k_b;
  b.m1 = m1;
  b.fake_sk = fsk;
  b.probability = 1.0;
  b.r_e = step1.r_e;
  if (fsk.empty()) {
    b.aborted = true;
  } else {
    const ReprogramPlan& pl = plan(fsk, quantum ? "" : fm.bits, step1.r_e);
    b.aborted = pl.aborted;
    b.overrides = pl.overrides;
    if (!pl.aborted) {
      b.case_tag = pl.outcome->case_tag;
      b.mu_size = static_cast<int>(pl.outcome->mu.size());
      const auto dec_in = dec_input(ka_, fsk, m1, quantum ? &ct_state : nullptr);
      before = access.queries();
      const auto dec_state = access.run(s.dec, dec_in, pl.overrides);
      counts.step3 = access.queries() - before;
      auto rng3 = stream_rng(cfg_.seed, trial, kStep3);
      res.k_e = draw(quantum_sim::measure(dec_state, s.dec.output("m")).probabilities(), rng3) == "1";
      b.success = res.k_e == res.k_b ? 1.0 : 0.0;
    }
  }
  if (!quantum) {
    b.view_in_support = false;
    if (!b.fake_sk.empty()) {
      for (const auto& h : family_) {
        if (!step1.r_e.consistent_with(h)) continue;
        if (protocols::gen_probability(s, h, b.fake_sk, fm.bits) <= cfg_.policy.support_threshold) continue;
        const auto st = quantum_sim::run(ka_.bob, h, input);
        const auto dist = protocols::field_distribution(ka_.bob, st, {"kB", "ct"});
        const std::vector<std::string> key{b.k_b ? "1" : "0", m1};
        if (dist.count(key) && dist.at(key) > cfg_.policy.support_threshold) {
          b.view_in_support = true;
          break;
        }
      }
    }
  }
  res.branches.push_back(b);
  finish_exact(res);
  res.k_e = b.aborted ? -1 : res.k_e;
  res.success = b.success > 0.5;
  diag.queries = counts;
  return res;
}

AttackResult AttackSession::run(const Oracle& oracle, std::uint64_t trial) const {
  if (oracle.n() != ka_.scheme.n) {
    throw DimensionMismatch("attack: oracle has n=" + std::to_string(oracle.n()) + ", scheme has n=" +
                            std::to_string(ka_.scheme.n));
  }
  if (cfg_.mode == AttackMode::sampled) return run_sampled(oracle, trial);
  if (ka_.scheme.flavor == protocols::KeyFlavor::quantum_pk) return run_exact_quantum(oracle);
  return run_exact_classical(oracle);
}

AttackResult run_attack(const protocols::QPKEScheme& scheme, const Oracle& oracle,
                        const AttackConfig& cfg) {
  return AttackSession(scheme, cfg).run(oracle);
}

AttackResult attack_quantum_pk(const protocols::QPKEScheme& scheme, const Oracle& oracle,
                               const AttackConfig& cfg) {
  return run_attack(scheme, oracle, cfg);
}

std::vector<AttackResult> run_over_family(const AttackSession& session, unsigned jobs,
                                          std::uint64_t trial) {
  const auto& family = session.family();
  std::vector<AttackResult> out(family.size());
  parallel_for(family.size(), jobs, [&](std::size_t k) { out[k] = session.run(family[k], trial); });
  return out;
}

AttackSummary summarize(const std::vector<AttackResult>& results) {
  AttackSummary s;
  s.runs = results.size();
  if (results.empty()) return s;
  s.scheme = results.front().scheme;
  s.epsilon = results.front().params.epsilon;
  s.mode = results.front().mode;
  for (const auto& r : results) {
    s.success_rate += r.success_probability;
    s.min_success = std::min(s.min_success, r.success_probability);
    s.abort_rate += r.abort_probability;
    s.case_a_fraction += r.case_a_probability;
    s.mean_cmi += r.diagnostics.cmi;
    s.mean_mu_size += r.diagnostics.mean_mu_size;
    s.view_support_violation += r.diagnostics.view_support_violation;
    s.heavy_miss_rate += r.diagnostics.heavy_covered ? 0.0 : 1.0;
    if (r.diagnostics.queries) {
      const double qn = static_cast<double>(r.diagnostics.queries->total());
      s.mean_queries += qn;
      s.max_queries = std::max(s.max_queries, qn);
    }
  }
  const double k = static_cast<double>(results.size());
  s.success_rate /= k;
  s.abort_rate /= k;
  s.case_a_fraction /= k;
  s.mean_cmi /= k;
  s.mean_mu_size /= k;
  s.mean_queries /= k;
  s.view_support_violation /= k;
  s.heavy_miss_rate /= k;
  return s;
}

nlohmann::json to_json(const AttackResult& r, bool with_branches) {
  const auto& d = r.diagnostics;
  nlohmann::json diag{{"cmi", d.cmi},
                      {"recovery_td", d.recovery_td},
                      {"max_recovery_td", d.max_recovery_td},
                      {"fr_bound", d.fr_bound},
                      {"entropy_S_A", d.entropy_S_A},
                      {"markov_j", d.markov_j},
                      {"mean_mu_size", d.mean_mu_size},
                      {"max_mu_size", d.max_mu_size},
                      {"r_e_size", d.r_e_size},
                      {"heavy_set_size", d.heavy_set_size},
                      {"heavy_covered", d.heavy_covered},
                      {"bob_tv", d.bob_tv},
                      {"bob_tv_bound", d.bob_tv_bound},
                      {"bob_closeness_holds", d.bob_closeness_holds},
                      {"view_support_violation", d.view_support_violation}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : d.case_b_checks) {
    checks.push_back({{"tv", c.tv},
                      {"instance_bound", c.instance_bound},
                      {"pigeonhole_bound", c.pigeonhole_bound},
                      {"holds", c.holds},
                      {"h_prime_valid", c.h_prime_valid}});
  }
  diag["case_b_checks"] = checks;
  if (d.uncompute_td) diag["uncompute_td"] = *d.uncompute_td;
  nlohmann::json j{{"scheme", r.scheme},
                   {"n", r.n},
                   {"d", r.params.d},
                   {"epsilon", r.params.epsilon},
                   {"mode", to_string(r.mode)},
                   {"seed", r.seed},
                   {"trial", r.trial},
                   {"oracle", r.oracle.to_bitstring()},
                   {"case_tag", boolean_poly::to_string(r.case_tag)},
                   {"success", r.success},
                   {"aborted", r.aborted},
                   {"k_e", r.k_e},
                   {"k_b", r.k_b},
                   {"success_probability", r.success_probability},
                   {"abort_probability", r.abort_probability},
                   {"case_a_probability", r.case_a_probability},
                   {"cmi", d.cmi},
                   {"mu_size", d.mean_mu_size},
                   {"params", to_json(r.params)},
                   {"diagnostics", diag}};
  if (d.queries) {
    j["query_count"] = d.queries->total();
    j["queries"] = {{"step1", d.queries->step1},
                    {"step2", d.queries->step2},
                    {"step3", d.queries->step3},
                    {"budget", d.queries->budget}};
  } else {
    j["query_count"] = nullptr;
  }
  if (with_branches) {
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : r.branches) {
      bs.push_back({{"sk", b.sk},
                    {"m0", b.m0},
                    {"k_b", b.k_b},
                    {"m1", b.m1},
                    {"fake_sk", b.fake_sk},
                    {"probability", b.probability},
                    {"aborted", b.aborted},
                    {"case_tag", boolean_poly::to_string(b.case_tag)},
                    {"mu_size", b.mu_size},
                    {"success", b.success},
                    {"view_in_support", b.view_in_support}});
    }
    j["branches"] = bs;
  }
  return j;
}

nlohmann::json to_json(const AttackSummary& s) {
  return {{"scheme", s.scheme},
          {"epsilon", s.epsilon},
          {"mode", to_string(s.mode)},
          {"runs", s.runs},
          {"success_rate", s.success_rate},
          {"min_success", s.min_success},
          {"abort_rate", s.abort_rate},
          {"case_a_fraction", s.case_a_fraction},
          {"mean_cmi", s.mean_cmi},
          {"mean_mu_size", s.mean_mu_size},
          {"mean_queries", s.mean_queries},
          {"max_queries", s.max_queries},
          {"view_support_violation", s.view_support_violation},
          {"heavy_miss_rate", s.heavy_miss_rate}};
}

}  // namespace qromlab::attack
