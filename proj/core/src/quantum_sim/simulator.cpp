#include "qromlab/quantum_sim/simulator.hpp"

#include <cmath>

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

namespace {

// Splits basis indices into (value of `regs`, compacted value of the rest).
struct Split {
  std::vector<std::uint64_t> rest_masks;  // basis bits outside regs, low to high
  const RegisterLayout* layout;
  std::vector<std::string> regs;

  Split(const RegisterLayout& l, const std::vector<std::string>& r) : layout(&l), regs(r) {
    std::uint64_t in = 0;
    for (const auto& name : regs) {
      const auto& reg = l.at(name);
      for (int k = 0; k < reg.width; ++k) in |= l.bit_mask(reg, k);
    }
    for (int b = 0; b < l.total_qubits(); ++b) {
      const std::uint64_t m = std::uint64_t{1} << b;
      if (!(in & m)) rest_masks.push_back(m);
    }
  }
  std::uint64_t a(std::uint64_t x) const { return layout->read(x, regs); }
  std::uint64_t rest(std::uint64_t x) const {
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < rest_masks.size(); ++k) {
      if (x & rest_masks[k]) r |= std::uint64_t{1} << k;
    }
    return r;
  }
  std::uint64_t join(std::uint64_t a_val, std::uint64_t r) const {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < rest_masks.size(); ++k) {
      if ((r >> k) & 1U) x |= rest_masks[k];
    }
    return layout->write(x, regs, a_val);
  }
  std::size_t dim_a() const { return std::size_t{1} << layout->width(regs); }
  std::size_t dim_rest() const { return std::size_t{1} << rest_masks.size(); }
};

void check_query_wires(const QueryAlgorithm& alg) {
  if (!alg.has_query_wires()) {
    throw InvalidArgument("algorithm '" + alg.name() + "' has no query wires");
  }
}

}  // namespace

AlgorithmInput parse_classical_input(const QueryAlgorithm& alg, const std::string& bits) {
  const auto& regs = alg.spec().classical_inputs;
  const int expected = alg.layout().width(regs);
  if (static_cast<int>(bits.size()) != expected) {
    throw DimensionMismatch("algorithm '" + alg.name() + "': input has " +
                            std::to_string(bits.size()) + " bits, classical inputs need " +
                            std::to_string(expected));
  }
  AlgorithmInput in;
  std::size_t pos = 0;
  for (const auto& r : regs) {
    const auto w = static_cast<std::size_t>(alg.layout().at(r).width);
    in.classical[r] = from_bitstring(std::string_view(bits).substr(pos, w));
    pos += w;
  }
  return in;
}

SimState initial_state(const QueryAlgorithm& alg, const AlgorithmInput& input) {
  const auto& L = alg.layout();
  std::uint64_t base = 0;
  for (const auto& [name, value] : input.classical) {
    const auto& reg = L.at(name);
    if (value >> reg.width) {
      throw DimensionMismatch("classical input for '" + name + "' does not fit its width");
    }
    base = L.write(base, reg, value);
  }
  bool mixed = false;
  std::vector<std::string> quantum_regs;
  for (const auto& q : input.quantum) {
    const auto dq = static_cast<Eigen::Index>(std::size_t{1} << L.width(q.registers));
    if (q.density.size() > 0) {
      mixed = true;
      if (q.density.rows() != dq || q.density.cols() != dq) {
        throw DimensionMismatch("quantum input density has the wrong dimension");
      }
    } else if (q.pure.size() != dq) {
      throw DimensionMismatch("quantum input vector has the wrong dimension");
    }
    for (const auto& r : q.registers) {
      if (input.classical.count(r)) {
        throw InvalidArgument("register '" + r + "' given both classical and quantum input");
      }
      quantum_regs.push_back(r);
    }
  }
  const Split split(L, quantum_regs);
  const std::uint64_t rest = split.rest(base);
  // Tensor the quantum inputs in the order given; the resulting joint value is
  // then scattered by Split::join.
  if (!mixed) {
    CVector joint = CVector::Ones(1);
    for (const auto& q : input.quantum) joint = kron(joint, q.pure);
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(L.dimension()));
    for (Eigen::Index a = 0; a < joint.size(); ++a) {
      psi(static_cast<Eigen::Index>(split.join(static_cast<std::uint64_t>(a), rest))) = joint(a);
    }
    return SimState::pure(L, std::move(psi));
  }
  CMatrix joint = CMatrix::Ones(1, 1);
  for (const auto& q : input.quantum) {
    joint = kron(joint, q.density.size() > 0 ? q.density : CMatrix(q.pure * q.pure.adjoint()));
  }
  const auto dim = static_cast<Eigen::Index>(L.dimension());
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < joint.rows(); ++a) {
    const auto x = static_cast<Eigen::Index>(split.join(static_cast<std::uint64_t>(a), rest));
    for (Eigen::Index b = 0; b < joint.cols(); ++b) {
      const auto y = static_cast<Eigen::Index>(split.join(static_cast<std::uint64_t>(b), rest));
      rho(x, y) = joint(a, b);
    }
  }
  return SimState::mixed(L, std::move(rho));
}

SimState apply_oracle(const SimState& state, const Oracle& oracle, const std::string& query_input,
                      const std::string& query_output) {
  const auto& L = state.layout();
  const auto& in = L.at(query_input);
  const auto& out = L.at(query_output);
  if (in.width != oracle.n() || out.width != 1) {
    throw DimensionMismatch("apply_oracle: registers '" + query_input + "' (width " +
                            std::to_string(in.width) + ") and '" + query_output + "' (width " +
                            std::to_string(out.width) + ") do not match an oracle on " +
                            std::to_string(oracle.n()) + " qubits");
  }
  const std::uint64_t flip = L.bit_mask(out, 0);
  const auto dim = L.dimension();
  std::vector<std::uint64_t> target(dim);
  for (std::uint64_t x = 0; x < dim; ++x) target[x] = oracle(L.read(x, in)) ? x ^ flip : x;
  if (state.is_pure()) {
    const auto& v = state.amplitudes();
    CVector w(v.size());
    for (std::uint64_t x = 0; x < dim; ++x) {
      w(static_cast<Eigen::Index>(target[x])) = v(static_cast<Eigen::Index>(x));
    }
    return SimState::pure(L, std::move(w));
  }
  const CMatrix rho = state.density();
  CMatrix out_rho(rho.rows(), rho.cols());
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      out_rho(static_cast<Eigen::Index>(target[x]), static_cast<Eigen::Index>(target[y])) =
          rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
  }
  return SimState::mixed(L, std::move(out_rho));
}

SimState run(const QueryAlgorithm& alg, const Oracle& oracle, const AlgorithmInput& input) {
  SimState s = initial_state(alg, input).apply(alg.sparse_unitaries()[0]);
  for (int k = 1; k <= alg.d(); ++k) {
    s = apply_oracle(s, oracle, alg.spec().query_input, alg.spec().query_output);
    s = s.apply(alg.sparse_unitaries()[static_cast<std::size_t>(k)]);
  }
  return s;
}

SimState run(const QueryAlgorithm& alg, const Oracle& oracle, const std::string& input_bits) {
  return run(alg, oracle, parse_classical_input(alg, input_bits));
}

SimState run_until_query(const QueryAlgorithm& alg, const Oracle& oracle,
                         const AlgorithmInput& input, int t) {
  if (t < 1 || t > alg.d()) {
    throw InvalidArgument("run_until_query: t=" + std::to_string(t) + " outside [1, " +
                          std::to_string(alg.d()) + "]");
  }
  SimState s = initial_state(alg, input).apply(alg.sparse_unitaries()[0]);
  for (int k = 1; k < t; ++k) {
    s = apply_oracle(s, oracle, alg.spec().query_input, alg.spec().query_output);
    s = s.apply(alg.sparse_unitaries()[static_cast<std::size_t>(k)]);
  }
  return s;
}

double QueryWeightProfile::total() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

QueryWeightProfile query_weights(const QueryAlgorithm& alg, const Oracle& oracle,
                                 const AlgorithmInput& input) {
  QueryWeightProfile profile;
  profile.d = alg.d();
  if (alg.d() == 0) return profile;
  check_query_wires(alg);
  profile.weights.assign(oracle.size(), 0.0);
  const auto& L = alg.layout();
  const auto& in = L.at(alg.spec().query_input);
  SimState s = initial_state(alg, input).apply(alg.sparse_unitaries()[0]);
  for (int k = 1; k <= alg.d(); ++k) {
    if (s.is_pure()) {
      const auto& v = s.amplitudes();
      for (Eigen::Index x = 0; x < v.size(); ++x) {
        profile.weights[L.read(static_cast<std::uint64_t>(x), in)] += std::norm(v(x));
      }
    } else {
      const CMatrix rho = s.density();
      for (Eigen::Index x = 0; x < rho.rows(); ++x) {
        profile.weights[L.read(static_cast<std::uint64_t>(x), in)] += rho(x, x).real();
      }
    }
    s = apply_oracle(s, oracle, alg.spec().query_input, alg.spec().query_output);
    s = s.apply(alg.sparse_unitaries()[static_cast<std::size_t>(k)]);
  }
  return profile;
}

double bbbv_deviation_bound(const QueryWeightProfile& profile, const Oracle& oracle_a,
                            const Oracle& oracle_b, int d) {
  if (d == 0) return 0.0;
  if (profile.weights.size() != oracle_a.size()) {
    throw DimensionMismatch("bbbv_deviation_bound: profile length does not match the oracle");
  }
  double mass = 0.0;
  for (auto i : oracle_a.diff(oracle_b)) mass += profile.weights[i];
  return 2.0 * std::sqrt(static_cast<double>(d)) * std::sqrt(std::max(0.0, mass));
}

double state_deviation(const SimState& psi, const SimState& phi) {
  if (!(psi.layout() == phi.layout())) {
    throw DimensionMismatch("state_deviation: states live on different register layouts");
  }
  return (psi.amplitudes() - phi.amplitudes()).norm();
}

OutputDistribution measure(const SimState& state, const std::vector<std::string>& registers) {
  const auto& L = state.layout();
  const int w = L.width(registers);
  std::vector<double> p(std::size_t{1} << w, 0.0);
  if (state.is_pure()) {
    const auto& v = state.amplitudes();
    for (Eigen::Index x = 0; x < v.size(); ++x) {
      p[L.read(static_cast<std::uint64_t>(x), registers)] += std::norm(v(x));
    }
  } else {
    const CMatrix rho = state.density();
    for (Eigen::Index x = 0; x < rho.rows(); ++x) {
      p[L.read(static_cast<std::uint64_t>(x), registers)] += rho(x, x).real();
    }
  }
  OutputDistribution::Map m;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) m[to_bitstring(k, w)] = p[k];
  }
  return OutputDistribution(std::move(m));
}

std::pair<SimState, double> condition_on(const SimState& state,
                                         const std::vector<std::string>& registers,
                                         std::uint64_t outcome) {
  const auto& L = state.layout();
  if (state.is_pure()) {
    CVector v = state.amplitudes();
    for (Eigen::Index x = 0; x < v.size(); ++x) {
      if (L.read(static_cast<std::uint64_t>(x), registers) != outcome) v(x) = 0.0;
    }
    const double p = v.squaredNorm();
    if (p <= 0.0) return {state, 0.0};
    return {SimState::pure(L, v / std::sqrt(p)), p};
  }
  CMatrix rho = state.density();
  for (Eigen::Index x = 0; x < rho.rows(); ++x) {
    if (L.read(static_cast<std::uint64_t>(x), registers) != outcome) {
      rho.row(x).setZero();
      rho.col(x).setZero();
    }
  }
  const double p = rho.trace().real();
  if (p <= 0.0) return {state, 0.0};
  return {SimState::mixed(L, rho / p), p};
}

CMatrix reduced_density(const SimState& state, const std::vector<std::string>& registers) {
  const Split split(state.layout(), registers);
  const auto da = static_cast<Eigen::Index>(split.dim_a());
  const auto dr = static_cast<Eigen::Index>(split.dim_rest());
  if (state.is_pure()) {
    const auto& v = state.amplitudes();
    CMatrix psi(da, dr);
    for (Eigen::Index x = 0; x < v.size(); ++x) {
      const auto ux = static_cast<std::uint64_t>(x);
      psi(static_cast<Eigen::Index>(split.a(ux)), static_cast<Eigen::Index>(split.rest(ux))) =
          v(x);
    }
    return psi * psi.adjoint();
  }
  const CMatrix rho = state.density();
  CMatrix out = CMatrix::Zero(da, da);
  for (Eigen::Index r = 0; r < dr; ++r) {
    for (Eigen::Index a = 0; a < da; ++a) {
      const auto x = static_cast<Eigen::Index>(
          split.join(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(r)));
      for (Eigen::Index b = 0; b < da; ++b) {
        const auto y = static_cast<Eigen::Index>(
            split.join(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(r)));
        out(a, b) += rho(x, y);
      }
    }
  }
  return out;
}

OutputDistribution output_distribution(const QueryAlgorithm& alg, const Oracle& oracle,
                                       const AlgorithmInput& input, const std::string& field) {
  return measure(run(alg, oracle, input), alg.output(field));
}

}  // namespace qromlab::quantum_sim
