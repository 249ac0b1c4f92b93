#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qromlab/linalg.hpp"
#include "qromlab/protocols/qpke.hpp"

namespace qromlab::protocols {

/// Two-round key agreement built from a QPKE scheme: A0 = Gen (sends pk),
/// B = Enc on a uniform key bit kB, A1 = Dec(sk, m1).
struct KeyAgreement {
  QPKEScheme scheme;
  /// Enc with an extra one-qubit register "kB" prepared in |+> and copied into
  /// the message register before U_1. Outputs "ct" and "kB".
  QueryAlgorithm bob;
};

KeyAgreement qpke_to_ka(const QPKEScheme& scheme);

/// Bob's input for first message m0 (classical flavor: the pk bit string).
quantum_sim::AlgorithmInput bob_input(const KeyAgreement& ka, const std::string& m0);
/// Quantum flavor: pk handed over as a quantum state.
quantum_sim::AlgorithmInput bob_input(const KeyAgreement& ka, const quantum_sim::QuantumInput& pk);

struct KATranscript {
  std::string sk;
  std::string m0;  // pk bits, or "|pk(sk)>" for the quantum flavor
  int k_b = 0;
  std::string m1;  // ct bits; empty when the ciphertext is quantum
  std::optional<CMatrix> m1_state;
  int k_a = 0;
  double probability = 0.0;
};

/// Every transcript of the KA on `oracle` with its exact probability.
std::vector<KATranscript> enumerate_transcripts(const KeyAgreement& ka, const Oracle& oracle,
                                                const NumericPolicy& policy = default_policy());

/// Pr[k_A = k_B] on `oracle`.
double agreement_probability(const KeyAgreement& ka, const Oracle& oracle,
                             const NumericPolicy& policy = default_policy());

/// Pr[Dec^H(sk, ct) = k] for classical sk and classical ct bits.
double decryption_probability(const QPKEScheme& scheme, const Oracle& oracle,
                              const std::string& sk, const std::string& ct, int k);
/// Same with a quantum ciphertext state on the ct registers.
double decryption_probability(const QPKEScheme& scheme, const Oracle& oracle,
                              const std::string& sk, const CMatrix& ct_state, int k);

/// (i, H(i)) pairs learned by classical queries.
class QueryRecord {
 public:
  /// Throws InvariantViolation if i was recorded with the other value.
  void add(std::uint64_t i, int value);
  const std::map<std::uint64_t, int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool consistent_with(const Oracle& oracle) const;
  /// Canonical "i:v,i:v" string for use as a classical value.
  std::string key() const;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;

 private:
  std::map<std::uint64_t, int> entries_;
};

/// (sk or sk', m0, kB, m1, R_E).
struct TranscriptView {
  std::string sk_or_fake;
  std::string m0;
  int k_b = 0;
  std::string m1;
  QueryRecord r_e;
};

/// (i) the KA on `oracle` yields (sk, m0, kB, m1) with probability above the
/// support threshold and (ii) R_E agrees with `oracle`. Classical flavor only.
bool is_compatible(const KeyAgreement& ka, const TranscriptView& view, const Oracle& oracle,
                   const NumericPolicy& policy = default_policy());

/// Pr[Gen^H -> (sk, pk)].
double gen_probability(const QPKEScheme& scheme, const Oracle& oracle, const std::string& sk,
                       const std::string& pk);

}  // namespace qromlab::protocols
