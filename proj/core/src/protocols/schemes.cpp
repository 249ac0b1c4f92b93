#include "qromlab/protocols/schemes.hpp"

#include <algorithm>

#include "qromlab/error.hpp"
#include "qromlab/quantum_sim/circuit_builder.hpp"

namespace qromlab::protocols {

using quantum_sim::CircuitBuilder;
using quantum_sim::InputSpec;
using quantum_sim::RegisterLayout;

namespace {

CMatrix identity(const RegisterLayout& l) {
  const auto d = static_cast<Eigen::Index>(l.dimension());
  return CMatrix::Identity(d, d);
}

void check_n(int n) {
  if (n < 1 || n > 3) throw InvalidArgument("toy schemes support n in {1, 2, 3}");
}

// Dec for pointer-style schemes: o = c xor H(sr).
QueryAlgorithm pointer_dec(const std::string& name, std::vector<std::string> sk_regs,
                           std::vector<std::pair<std::string, int>> regs, const std::string& query) {
  regs.emplace_back("c", 1);
  regs.emplace_back("o", 1);
  RegisterLayout l(regs);
  InputSpec spec;
  spec.classical_inputs = sk_regs;
  spec.classical_inputs.push_back("c");
  spec.query_input = query;
  spec.query_output = "o";
  spec.outputs = {{"m", {"o"}}};
  CircuitBuilder u1(l);
  u1.cnot("c", 0, "o", 0);
  return QueryAlgorithm(name, l, spec, {u1.matrix(), identity(l)});
}

// Enc that masks the message with a classical pk bit: b ^= ph, no queries.
QueryAlgorithm masking_enc(const std::string& name) {
  RegisterLayout l({{"ph", 1}, {"b", 1}});
  InputSpec spec;
  spec.classical_inputs = {"ph", "b"};
  spec.outputs = {{"ct", {"b"}}};
  CircuitBuilder u1(l);
  u1.cnot("ph", 0, "b", 0);
  return QueryAlgorithm(name, l, spec, {u1.matrix()});
}

// r uniform, h = H(r).
QueryAlgorithm query_uniform_gen(const std::string& name, int n,
                                 std::map<std::string, std::vector<std::string>> outputs) {
  RegisterLayout l({{"r", n}, {"h", 1}});
  InputSpec spec;
  spec.query_input = "r";
  spec.query_output = "h";
  spec.outputs = std::move(outputs);
  CircuitBuilder u1(l);
  u1.hadamard("r");
  return QueryAlgorithm(name, l, spec, {u1.matrix(), identity(l)});
}

}  // namespace

QPKEScheme pointer_scheme(int n) {
  check_n(n);
  QueryAlgorithm gen = query_uniform_gen("S1.gen", n, {{"sk", {"r"}}, {"pk", {"r", "h"}}});

  RegisterLayout le({{"pr", n}, {"ph", 1}, {"b", 1}});
  InputSpec se;
  se.classical_inputs = {"pr", "ph", "b"};
  se.query_input = "pr";
  se.query_output = "b";
  se.outputs = {{"ct", {"b"}}};
  QueryAlgorithm enc("S1.enc", le, se, {identity(le), identity(le)});

  QueryAlgorithm dec = pointer_dec("S1.dec", {"sr"}, {{"sr", n}}, "sr");
  QPKEScheme s{.name = "S1", .n = n, .d = 1, .flavor = KeyFlavor::classical_pk,
               .gen = std::move(gen), .pkgen = std::nullopt, .enc = std::move(enc),
               .dec = std::move(dec), .message_register = "b"};
  s.validate();
  return s;
}

QPKEScheme masked_pointer_scheme(int n) {
  check_n(n);
  RegisterLayout lg({{"r", n}, {"h", 1}, {"s", n}, {"u", n}});
  InputSpec sg;
  sg.query_input = "r";
  sg.query_output = "h";
  sg.outputs = {{"sk", {"r", "s"}}, {"pk", {"u", "h"}}};
  CircuitBuilder g1(lg);
  g1.hadamard("r").hadamard("s");
  CircuitBuilder g2(lg);
  g2.xor_into("u", "r").xor_into("u", "s");
  QueryAlgorithm gen("S2.gen", lg, sg, {g1.matrix(), g2.matrix()});

  RegisterLayout le({{"u", n}, {"ph", 1}, {"b", 1}, {"q", n}, {"a", 1}});
  InputSpec se;
  se.classical_inputs = {"u", "ph", "b"};
  se.query_input = "q";
  se.query_output = "a";
  se.outputs = {{"ct", {"b"}}};
  CircuitBuilder e1(le);
  e1.hadamard("q", 0).xor_into("q", "u");
  CircuitBuilder e2(le);
  e2.cnot("ph", 0, "b", 0);
  QueryAlgorithm enc("S2.enc", le, se, {e1.matrix(), e2.matrix()});

  QueryAlgorithm dec = pointer_dec("S2.dec", {"r", "s"}, {{"r", n}, {"s", n}}, "r");
  QPKEScheme s{.name = "S2", .n = n, .d = 1, .flavor = KeyFlavor::classical_pk,
               .gen = std::move(gen), .pkgen = std::nullopt, .enc = std::move(enc),
               .dec = std::move(dec), .message_register = "b"};
  s.validate();
  return s;
}

QPKEScheme quantum_pk_scheme(int n) {
  check_n(n);
  RegisterLayout lg({{"r", n}});
  InputSpec sg;
  sg.outputs = {{"sk", {"r"}}};
  CircuitBuilder g1(lg);
  g1.hadamard("r");
  QueryAlgorithm gen("S3.skgen", lg, sg, {g1.matrix()});

  RegisterLayout lp({{"r", n}, {"p", n}});
  InputSpec sp;
  sp.classical_inputs = {"r"};
  sp.outputs = {{"pk", {"p"}}};
  CircuitBuilder p1(lp);
  p1.hadamard("p", 0).xor_into("p", "r");
  QueryAlgorithm pkgen("S3.pkgen", lp, sp, {p1.matrix()});

  RegisterLayout le({{"p", n}, {"a", 1}, {"b", 1}});
  InputSpec se;
  se.classical_inputs = {"b"};
  se.quantum_inputs = {"p"};
  se.query_input = "p";
  se.query_output = "a";
  se.outputs = {{"ct", {"p", "a"}}};
  CircuitBuilder e2(le);
  e2.controlled_z("b", 0, "p", 0);
  QueryAlgorithm enc("S3.enc", le, se, {identity(le), e2.matrix()});

  RegisterLayout ld({{"r", n}, {"p", n}, {"a", 1}, {"o", 1}});
  InputSpec sd;
  sd.classical_inputs = {"r"};
  sd.quantum_inputs = {"p", "a"};
  sd.query_input = "p";
  sd.query_output = "a";
  sd.outputs = {{"m", {"o"}}};
  CircuitBuilder d2(ld);
  d2.xor_into("p", "r").hadamard("p", 0).cnot("p", 0, "o", 0);
  QueryAlgorithm dec("S3.dec", ld, sd, {identity(ld), d2.matrix()});

  QPKEScheme s{.name = "S3", .n = n, .d = 1, .flavor = KeyFlavor::quantum_pk,
               .gen = std::move(gen), .pkgen = std::move(pkgen), .enc = std::move(enc),
               .dec = std::move(dec), .message_register = "b"};
  s.validate();
  return s;
}

QPKEScheme hidden_pointer_scheme(int n) {
  check_n(n);
  QPKEScheme s{.name = "S4", .n = n, .d = 1, .flavor = KeyFlavor::classical_pk,
               .gen = query_uniform_gen("S4.gen", n, {{"sk", {"r"}}, {"pk", {"h"}}}),
               .pkgen = std::nullopt, .enc = masking_enc("S4.enc"),
               .dec = pointer_dec("S4.dec", {"sr"}, {{"sr", n}}, "sr"),
               .message_register = "b"};
  s.validate();
  return s;
}

QPKEScheme sum_pointer_scheme(int n) {
  check_n(n);
  RegisterLayout ld({{"k", 1}, {"c", 1}, {"q", n}, {"a", 1}, {"o", 1}});
  InputSpec sd;
  sd.classical_inputs = {"k", "c"};
  sd.query_input = "q";
  sd.query_output = "a";
  sd.outputs = {{"m", {"o"}}};
  CircuitBuilder d1(ld);
  d1.hadamard("q").cnot("c", 0, "o", 0).cnot("k", 0, "o", 0);
  QueryAlgorithm dec("S5.dec", ld, sd, {d1.matrix(), identity(ld)});

  QPKEScheme s{.name = "S5", .n = n, .d = 1, .flavor = KeyFlavor::classical_pk,
               .gen = query_uniform_gen("S5.gen", n, {{"sk", {"h"}}, {"pk", {"h"}}}),
               .pkgen = std::nullopt, .enc = masking_enc("S5.enc"), .dec = std::move(dec),
               .message_register = "b"};
  s.validate();
  return s;
}

QPKEScheme broken_pointer_scheme(int n) {
  QPKEScheme s = pointer_scheme(n);
  RegisterLayout ld({{"sr", n}, {"c", 1}, {"q", n}, {"o", 1}});
  InputSpec sd;
  sd.classical_inputs = {"sr", "c"};
  sd.query_input = "q";
  sd.query_output = "o";
  sd.outputs = {{"m", {"o"}}};
  CircuitBuilder d1(ld);
  d1.cnot("c", 0, "o", 0);
  for (int k = 1; k < n; ++k) d1.cnot("sr", k, "q", k);
  s.name = "broken";
  s.dec = QueryAlgorithm("broken.dec", ld, sd, {d1.matrix(), identity(ld)});
  s.validate();
  return s;
}

namespace {

const std::vector<std::pair<std::string, std::string>>& aliases() {
  static const std::vector<std::pair<std::string, std::string>> a = {
      {"S1", "pointer"},        {"S2", "masked-pointer"}, {"S3", "quantum-pk"},
      {"S4", "hidden-pointer"}, {"S5", "sum-pointer"},    {"broken", "broken-pointer"}};
  return a;
}

}  // namespace

std::vector<std::string> scheme_names() {
  std::vector<std::string> out;
  for (const auto& [s, l] : aliases()) out.push_back(s);
  return out;
}

bool is_scheme_name(const std::string& name) {
  return std::any_of(aliases().begin(), aliases().end(),
                     [&](const auto& a) { return a.first == name || a.second == name; });
}

QPKEScheme make_scheme(const std::string& name, int n) {
  std::string key = name;
  for (const auto& [s, l] : aliases()) {
    if (name == l) key = s;
  }
  if (key == "S1") return pointer_scheme(n);
  if (key == "S2") return masked_pointer_scheme(n);
  if (key == "S3") return quantum_pk_scheme(n);
  if (key == "S4") return hidden_pointer_scheme(n);
  if (key == "S5") return sum_pointer_scheme(n);
  if (key == "broken") return broken_pointer_scheme(n);
  std::string known;
  for (const auto& [s, l] : aliases()) known += (known.empty() ? "" : ", ") + s + "/" + l;
  throw InvalidArgument("unknown scheme '" + name + "' (known: " + known + ")");
}

}  // namespace qromlab::protocols
