#include "qromlab/protocols/key_agreement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qromlab/error.hpp"
#include "qromlab/quantum_sim/circuit_builder.hpp"

namespace qromlab::protocols {

using quantum_sim::AlgorithmInput;
using quantum_sim::QuantumInput;
using quantum_sim::to_bitstring;

KeyAgreement qpke_to_ka(const QPKEScheme& scheme) {
  scheme.validate();
  const auto& enc = scheme.enc;
  const auto layout = enc.layout().appended("kB", 1);
  const CMatrix id2 = CMatrix::Identity(2, 2);

  quantum_sim::CircuitBuilder first(layout);
  first.hadamard("kB", 0).cnot("kB", 0, scheme.message_register, 0);
  first.apply(kron(enc.unitaries()[0], id2));
  std::vector<CMatrix> us = {first.matrix()};
  for (std::size_t k = 1; k < enc.unitaries().size(); ++k) {
    us.push_back(kron(enc.unitaries()[k], id2));
  }
  quantum_sim::InputSpec spec = enc.spec();
  spec.classical_inputs.pop_back();
  spec.outputs["kB"] = {"kB"};
  return {scheme, QueryAlgorithm(enc.name() + "+kB", layout, spec, std::move(us))};
}

AlgorithmInput bob_input(const KeyAgreement& ka, const std::string& m0) {
  if (ka.scheme.flavor != KeyFlavor::classical_pk) {
    throw InvalidArgument("bob_input: quantum-pk schemes take the public key as a state");
  }
  return quantum_sim::parse_classical_input(ka.bob, m0);
}

AlgorithmInput bob_input(const KeyAgreement& ka, const QuantumInput& pk) {
  if (ka.scheme.flavor != KeyFlavor::quantum_pk) {
    throw InvalidArgument("bob_input: classical-pk schemes take the public key as bits");
  }
  AlgorithmInput in;
  in.quantum.push_back(pk);
  return in;
}

double decryption_probability(const QPKEScheme& scheme, const Oracle& oracle,
                              const std::string& sk, const std::string& ct, int k) {
  const auto state = quantum_sim::run(scheme.dec, oracle, sk + ct);
  return quantum_sim::measure(state, scheme.dec.output("m"))[to_bitstring(
      static_cast<std::uint64_t>(k), 1)];
}

double decryption_probability(const QPKEScheme& scheme, const Oracle& oracle,
                              const std::string& sk, const CMatrix& ct_state, int k) {
  // Dec is linear in its input, so run each eigenvector as a pure state.
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(ct_state);
  const std::string want = to_bitstring(static_cast<std::uint64_t>(k), 1);
  double total = 0.0;
  for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j) {
    const double w = eig.eigenvalues()(j);
    if (w <= 1e-14) continue;
    AlgorithmInput in = quantum_sim::parse_classical_input(scheme.dec, sk);
    QuantumInput q;
    q.registers = scheme.dec.spec().quantum_inputs;
    q.pure = eig.eigenvectors().col(j);
    in.quantum.push_back(std::move(q));
    const auto state = quantum_sim::run(scheme.dec, oracle, in);
    total += w * quantum_sim::measure(state, scheme.dec.output("m"))[want];
  }
  return total;
}

std::vector<KATranscript> enumerate_transcripts(const KeyAgreement& ka, const Oracle& oracle,
                                                const NumericPolicy& policy) {
  const auto& s = ka.scheme;
  const double thr = policy.support_threshold;
  std::vector<KATranscript> out;
  const auto gen_state = quantum_sim::run(s.gen, oracle, AlgorithmInput{});
  if (s.flavor == KeyFlavor::classical_pk) {
    for (const auto& [key, p] : field_distribution(s.gen, gen_state, {"sk", "pk"})) {
      if (p <= thr) continue;
      const auto bob_state = quantum_sim::run(ka.bob, oracle, bob_input(ka, key[1]));
      for (const auto& [bk, q] : field_distribution(ka.bob, bob_state, {"kB", "ct"})) {
        if (q <= thr) continue;
        const auto dec_state = quantum_sim::run(s.dec, oracle, key[0] + bk[1]);
        for (const auto& [m, r] : quantum_sim::measure(dec_state, s.dec.output("m"))) {
          if (r <= thr) continue;
          out.push_back({key[0], key[1], bk[0] == "1" ? 1 : 0, bk[1], std::nullopt,
                         m == "1" ? 1 : 0, p * q * r});
        }
      }
    }
    return out;
  }
  for (const auto& [sk, p] : quantum_sim::measure(gen_state, s.gen.output("sk"))) {
    if (p <= thr) continue;
    const auto pk = quantum_public_key(s, oracle, sk, policy);
    const auto bob_state = quantum_sim::run(ka.bob, oracle, bob_input(ka, pk));
    for (int kb = 0; kb < 2; ++kb) {
      const auto [cond, q] = quantum_sim::condition_on(bob_state, {"kB"}, static_cast<std::uint64_t>(kb));
      if (q <= thr) continue;
      const CMatrix ct = quantum_sim::reduced_density(cond, s.enc.output("ct"));
      for (int ka_bit = 0; ka_bit < 2; ++ka_bit) {
        const double r = decryption_probability(s, oracle, sk, ct, ka_bit);
        if (r <= thr) continue;
        out.push_back({sk, "|pk(" + sk + ")>", kb, "", ct, ka_bit, p * q * r});
      }
    }
  }
  return out;
}

double agreement_probability(const KeyAgreement& ka, const Oracle& oracle,
                             const NumericPolicy& policy) {
  double agree = 0.0;
  for (const auto& t : enumerate_transcripts(ka, oracle, policy)) {
    if (t.k_a == t.k_b) agree += t.probability;
  }
  return agree;
}

void QueryRecord::add(std::uint64_t i, int value) {
  if (value != 0 && value != 1) throw InvalidArgument("QueryRecord: oracle values are bits");
  auto [it, inserted] = entries_.emplace(i, value);
  if (!inserted && it->second != value) {
    throw InvariantViolation("QueryRecord: index " + std::to_string(i) +
                             " recorded with both values");
  }
}

bool QueryRecord::consistent_with(const Oracle& oracle) const {
  for (const auto& [i, v] : entries_) {
    if (i >= oracle.size() || oracle(i) != v) return false;
  }
  return true;
}

std::string QueryRecord::key() const {
  std::string s;
  for (const auto& [i, v] : entries_) {
    s += (s.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(v);
  }
  return s;
}

double gen_probability(const QPKEScheme& scheme, const Oracle& oracle, const std::string& sk,
                       const std::string& pk) {
  const auto state = quantum_sim::run(scheme.gen, oracle, AlgorithmInput{});
  const auto dist = field_distribution(scheme.gen, state, {"sk", "pk"});
  auto it = dist.find({sk, pk});
  return it == dist.end() ? 0.0 : it->second;
}

bool is_compatible(const KeyAgreement& ka, const TranscriptView& view, const Oracle& oracle,
                   const NumericPolicy& policy) {
  if (ka.scheme.flavor != KeyFlavor::classical_pk) {
    throw InvalidArgument("is_compatible: defined for classical transcripts only");
  }
  if (!view.r_e.consistent_with(oracle)) return false;
  const double p_gen = gen_probability(ka.scheme, oracle, view.sk_or_fake, view.m0);
  if (p_gen <= policy.support_threshold) return false;
  const auto bob_state = quantum_sim::run(ka.bob, oracle, bob_input(ka, view.m0));
  const auto dist = field_distribution(ka.bob, bob_state, {"kB", "ct"});
  auto it = dist.find({to_bitstring(static_cast<std::uint64_t>(view.k_b), 1), view.m1});
  const double p_bob = it == dist.end() ? 0.0 : it->second;
  return p_gen * p_bob > policy.support_threshold;
}

}  // namespace qromlab::protocols
