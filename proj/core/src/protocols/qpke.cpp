#include "qromlab/protocols/qpke.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "qromlab/error.hpp"
#include "qromlab/parallel.hpp"
#include "qromlab/protocols/key_agreement.hpp"

namespace qromlab::protocols {

using quantum_sim::AlgorithmInput;
using quantum_sim::QuantumInput;

std::string to_string(KeyFlavor f) {
  return f == KeyFlavor::classical_pk ? "classical-pk" : "quantum-pk";
}

namespace {

KeyFlavor flavor_from_string(const std::string& s) {
  if (s == "classical-pk") return KeyFlavor::classical_pk;
  if (s == "quantum-pk") return KeyFlavor::quantum_pk;
  throw InvalidArgument("unknown key flavor '" + s + "'");
}

int field_width(const QueryAlgorithm& alg, const std::string& field) {
  return alg.layout().width(alg.output(field));
}

void require(bool ok, const std::string& scheme, const std::string& what) {
  if (!ok) throw InvalidArgument("scheme '" + scheme + "': " + what);
}

}  // namespace

int QPKEScheme::sk_width() const { return field_width(gen, "sk"); }

int QPKEScheme::pk_width() const {
  return flavor == KeyFlavor::classical_pk ? field_width(gen, "pk") : field_width(*pkgen, "pk");
}

int QPKEScheme::ct_width() const { return field_width(enc, "ct"); }

void QPKEScheme::validate() const {
  require(gen.d() <= d && enc.d() <= d && dec.d() <= d, name, "an algorithm exceeds d queries");
  for (const auto* alg : {&gen, &enc, &dec}) {
    require(alg->d() == 0 || alg->n_in() == n, name,
            "algorithm '" + alg->name() + "' queries a domain other than n=" + std::to_string(n));
  }
  require(enc.layout().contains(message_register) &&
              enc.layout().at(message_register).width == 1,
          name, "message register must be a 1-qubit register of Enc");
  const auto& enc_in = enc.spec().classical_inputs;
  require(!enc_in.empty() && enc_in.back() == message_register, name,
          "Enc's last classical input must be the message register");
  dec.output("m");
  if (flavor == KeyFlavor::classical_pk) {
    require(!pkgen.has_value(), name, "classical-pk schemes have no pkgen");
    require(enc.layout().width(enc_in) == pk_width() + 1, name,
            "Enc's classical inputs must be pk followed by the message bit");
    require(dec.layout().width(dec.spec().classical_inputs) == sk_width() + ct_width(), name,
            "Dec's classical inputs must be sk followed by ct");
  } else {
    require(pkgen.has_value(), name, "quantum-pk schemes need pkgen");
    require(pkgen->d() == 0, name, "pkgen must make no oracle queries");
    require(pkgen->layout().width(pkgen->spec().classical_inputs) == sk_width(), name,
            "pkgen's classical input must be sk");
    require(enc.layout().width(enc.spec().quantum_inputs) == pk_width(), name,
            "Enc's quantum inputs must hold pk");
    require(enc_in.size() == 1, name, "Enc's only classical input is the message");
    require(dec.layout().width(dec.spec().classical_inputs) == sk_width(), name,
            "Dec's classical inputs must be sk");
    require(dec.layout().width(dec.spec().quantum_inputs) == ct_width(), name,
            "Dec's quantum inputs must hold ct");
  }
}

nlohmann::json manifest_entry(const QPKEScheme& s) {
  return {{"name", s.name},
          {"n", s.n},
          {"d", s.d},
          {"flavor", to_string(s.flavor)},
          {"oracle_family", s.oracle_family}};
}

nlohmann::json to_json(const QPKEScheme& s) {
  nlohmann::json j = manifest_entry(s);
  j["message_register"] = s.message_register;
  j["message_space"] = s.message_space;
  j["gen"] = quantum_sim::to_json(s.gen);
  if (s.pkgen) j["pkgen"] = quantum_sim::to_json(*s.pkgen);
  j["enc"] = quantum_sim::to_json(s.enc);
  j["dec"] = quantum_sim::to_json(s.dec);
  return j;
}

QPKEScheme scheme_from_json(const nlohmann::json& j) {
  std::optional<QueryAlgorithm> pkgen;
  if (j.contains("pkgen")) pkgen = quantum_sim::algorithm_from_json(j.at("pkgen"));
  QPKEScheme s{.name = j.at("name").get<std::string>(),
               .n = j.at("n").get<int>(),
               .d = j.at("d").get<int>(),
               .flavor = flavor_from_string(j.at("flavor").get<std::string>()),
               .gen = quantum_sim::algorithm_from_json(j.at("gen")),
               .pkgen = std::move(pkgen),
               .enc = quantum_sim::algorithm_from_json(j.at("enc")),
               .dec = quantum_sim::algorithm_from_json(j.at("dec")),
               .message_register = j.at("message_register").get<std::string>(),
               .message_space = j.value("message_space", std::vector<int>{0, 1}),
               .oracle_family = j.value("oracle_family", std::string("all"))};
  s.validate();
  return s;
}

JointDistribution field_distribution(const QueryAlgorithm& alg,
                                     const quantum_sim::SimState& state,
                                     const std::vector<std::string>& fields) {
  std::vector<std::string> regs;
  std::vector<int> widths;
  for (const auto& f : fields) {
    const auto& r = alg.output(f);
    regs.insert(regs.end(), r.begin(), r.end());
    widths.push_back(alg.layout().width(r));
  }
  JointDistribution out;
  for (const auto& [bits, p] : quantum_sim::measure(state, regs)) {
    std::vector<std::string> key;
    std::size_t pos = 0;
    for (int w : widths) {
      key.push_back(bits.substr(pos, static_cast<std::size_t>(w)));
      pos += static_cast<std::size_t>(w);
    }
    out[key] += p;
  }
  return out;
}

AlgorithmInput classical_input(const QueryAlgorithm& alg, const std::string& bits) {
  return quantum_sim::parse_classical_input(alg, bits);
}

QuantumInput quantum_public_key(const QPKEScheme& scheme, const Oracle& oracle,
                                const std::string& sk, const NumericPolicy& policy) {
  if (!scheme.pkgen) throw InvalidArgument("scheme '" + scheme.name + "' has no pkgen");
  const auto& pg = *scheme.pkgen;
  const auto state = quantum_sim::run(pg, oracle, sk);
  const CMatrix rho = quantum_sim::reduced_density(state, pg.output("pk"));
  QuantumInput in;
  in.registers = scheme.enc.spec().quantum_inputs;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  const auto top = solver.eigenvalues().size() - 1;
  if (std::abs(solver.eigenvalues()(top) - 1.0) <= policy.norm_tol) {
    in.pure = solver.eigenvectors().col(top);
  } else {
    in.density = rho;
  }
  return in;
}

std::vector<Oracle> oracle_family(const QPKEScheme& scheme) {
  if (scheme.oracle_family != "all") {
    throw InvalidArgument("unsupported oracle family '" + scheme.oracle_family + "'");
  }
  return quantum_sim::all_oracles(scheme.n);
}

namespace {

CompletenessReport check_one(const QPKEScheme& s, const Oracle& h, const NumericPolicy& policy) {
  CompletenessReport rep;
  rep.oracles_checked = 1;
  auto record = [&](const std::string& sk, const std::string& pk, int b, const std::string& ct,
                    double success) {
    if (success < rep.worst_success) {
      rep.worst_success = success;
      if (success < 1.0 - policy.probability_sum_tol) {
        rep.perfect = false;
        rep.witness = CompletenessWitness{h, sk, pk, b, ct, success};
      }
    }
  };
  const auto gen_state = quantum_sim::run(s.gen, h, AlgorithmInput{});
  if (s.flavor == KeyFlavor::classical_pk) {
    for (const auto& [key, p] : field_distribution(s.gen, gen_state, {"sk", "pk"})) {
      if (p <= policy.support_threshold) continue;
      const auto& sk = key[0];
      const auto& pk = key[1];
      for (int b : s.message_space) {
        const auto enc_state =
            quantum_sim::run(s.enc, h, classical_input(s.enc, pk + quantum_sim::to_bitstring(b, 1)));
        for (const auto& [ct, q] : quantum_sim::measure(enc_state, s.enc.output("ct"))) {
          if (q <= policy.support_threshold) continue;
          record(sk, pk, b, ct, decryption_probability(s, h, sk, ct, b));
        }
      }
    }
    return rep;
  }
  for (const auto& [sk, p] : quantum_sim::measure(gen_state, s.gen.output("sk"))) {
    if (p <= policy.support_threshold) continue;
    const QuantumInput pk = quantum_public_key(s, h, sk, policy);
    for (int b : s.message_space) {
      AlgorithmInput in = classical_input(s.enc, quantum_sim::to_bitstring(b, 1));
      in.quantum.push_back(pk);
      const auto enc_state = quantum_sim::run(s.enc, h, in);
      const CMatrix ct = quantum_sim::reduced_density(enc_state, s.enc.output("ct"));
      record(sk, "|pk>", b, "", decryption_probability(s, h, sk, ct, b));
    }
  }
  return rep;
}

}  // namespace

CompletenessReport check_perfect_completeness(const QPKEScheme& scheme,
                                              const std::vector<Oracle>& oracles,
                                              const NumericPolicy& policy, unsigned jobs) {
  scheme.validate();
  std::vector<CompletenessReport> per(oracles.size());
  parallel_for(oracles.size(), jobs,
               [&](std::size_t k) { per[k] = check_one(scheme, oracles[k], policy); });
  CompletenessReport total;
  for (const auto& r : per) {
    total.oracles_checked += r.oracles_checked;
    if (r.worst_success < total.worst_success) total.worst_success = r.worst_success;
    if (!r.perfect && total.perfect) {
      total.perfect = false;
      total.witness = r.witness;
    }
  }
  return total;
}

CompletenessReport check_perfect_completeness(const QPKEScheme& scheme,
                                              const NumericPolicy& policy, unsigned jobs) {
  return check_perfect_completeness(scheme, oracle_family(scheme), policy, jobs);
}

}  // namespace qromlab::protocols
