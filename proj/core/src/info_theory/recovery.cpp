#include "qromlab/info_theory/recovery.hpp"

#include <cmath>
#include <numbers>

#include "qromlab/error.hpp"
#include "qromlab/info_theory/entropy.hpp"

namespace qromlab::info_theory {

std::string to_string(RecoveryKind kind) {
  return kind == RecoveryKind::petz ? "petz" : "rotated-petz-average";
}

RecoveryKind recovery_kind_from_string(const std::string& s) {
  if (s == "petz") return RecoveryKind::petz;
  if (s == "rotated-petz-average" || s == "rotated") return RecoveryKind::rotated_petz_average;
  throw InvalidArgument("unknown recovery kind '" + s + "' (expected petz or rotated-petz-average)");
}

RecoveryChannel::RecoveryChannel(RecoveryKind kind, double cutoff, int dim_a, int dim_e,
                                 std::vector<CMatrix> kraus)
    : kind_(kind), cutoff_(cutoff), dim_a_(dim_a), dim_e_(dim_e), kraus_(std::move(kraus)) {
  const auto rows = static_cast<Eigen::Index>(dim_a_out()) * dim_e_;
  for (const auto& k : kraus_) {
    if (k.rows() != rows || k.cols() != dim_e_) {
      throw DimensionMismatch("RecoveryChannel: Kraus operator has shape " +
                              std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                              ", expected " + std::to_string(rows) + "x" + std::to_string(dim_e_));
    }
  }
}

CMatrix RecoveryChannel::apply(const CMatrix& x) const {
  if (x.rows() != dim_e_ || x.cols() != dim_e_) {
    throw DimensionMismatch("RecoveryChannel::apply: input is not an operator on E");
  }
  const auto rows = static_cast<Eigen::Index>(dim_a_out()) * dim_e_;
  CMatrix out = CMatrix::Zero(rows, rows);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

std::vector<CVector> RecoveryChannel::apply_to_vector(const CVector& v) const {
  if (v.size() != dim_e_) throw DimensionMismatch("RecoveryChannel: input vector is not on E");
  std::vector<CVector> out;
  out.reserve(kraus_.size());
  for (const auto& k : kraus_) out.emplace_back(k * v);
  return out;
}

std::vector<double> RecoveryChannel::a_distribution(const CVector& v) const {
  std::vector<double> p(static_cast<std::size_t>(dim_a_out()), 0.0);
  for (const auto& y : apply_to_vector(v)) {
    for (int a = 0; a < dim_a_out(); ++a) {
      p[static_cast<std::size_t>(a)] += y.segment(a * dim_e_, dim_e_).squaredNorm();
    }
  }
  return p;
}

CMatrix RecoveryChannel::choi() const {
  const auto out_dim = static_cast<Eigen::Index>(dim_a_out()) * dim_e_;
  const auto n = static_cast<Eigen::Index>(dim_e_) * out_dim;
  CMatrix j = CMatrix::Zero(n, n);
  for (const auto& k : kraus_) {
    CVector w(n);
    for (Eigen::Index i = 0; i < dim_e_; ++i) w.segment(i * out_dim, out_dim) = k.col(i);
    j += w * w.adjoint();
  }
  return j;
}

double RecoveryChannel::trace_preservation_defect() const {
  CMatrix s = CMatrix::Zero(dim_e_, dim_e_);
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return (s - CMatrix::Identity(dim_e_, dim_e_)).cwiseAbs().maxCoeff();
}

double RecoveryChannel::min_choi_eigenvalue() const {
  return hermitian_eigenvalues(choi()).minCoeff();
}

namespace {

CMatrix trace_out_a(const CMatrix& rho_ae, int dim_a, int dim_e) {
  CMatrix rho_e = CMatrix::Zero(dim_e, dim_e);
  for (int a = 0; a < dim_a; ++a) rho_e += rho_ae.block(a * dim_e, a * dim_e, dim_e, dim_e);
  return rho_e;
}

std::vector<std::pair<double, double>> rotation_weights(const RotationGrid& grid) {
  if (grid.points < 1) throw InvalidArgument("rotation grid needs at least one point");
  std::vector<std::pair<double, double>> out;
  double total = 0.0;
  for (int j = 0; j < grid.points; ++j) {
    const double t =
        grid.points == 1 ? 0.0 : -grid.extent + 2.0 * grid.extent * j / (grid.points - 1);
    const double beta = (std::numbers::pi / 2.0) / (std::cosh(std::numbers::pi * t) + 1.0);
    out.emplace_back(t, beta);
    total += beta;
  }
  for (auto& [t, w] : out) w /= total;
  return out;
}

}  // namespace

RecoveryChannel build_recovery_channel(const CMatrix& rho_ae, int dim_a, int dim_e,
                                       RecoveryKind kind, const NumericPolicy& policy,
                                       const RotationGrid& grid) {
  if (rho_ae.rows() != static_cast<Eigen::Index>(dim_a) * dim_e || rho_ae.cols() != rho_ae.rows()) {
    throw DimensionMismatch("build_recovery_channel: rho_AE is not (dim_a*dim_e)-dimensional");
  }
  const CMatrix rho_e = trace_out_a(rho_ae, dim_a, dim_e);
  const double cutoff = policy.pinv_cutoff;
  if (hermitian_eigenvalues(rho_e).maxCoeff() <= cutoff) {
    throw InvalidArgument("build_recovery_channel: rho_E is numerically zero");
  }
  const auto out_rows = static_cast<Eigen::Index>(dim_a + 1) * dim_e;
  std::vector<std::pair<double, double>> rotations = {{0.0, 1.0}};
  if (kind == RecoveryKind::rotated_petz_average) rotations = rotation_weights(grid);

  std::vector<CMatrix> kraus;
  for (const auto& [t, w] : rotations) {
    const CMatrix r = psd_power(rho_ae, Complex(0.5, t / 2.0), cutoff);
    const CMatrix q = psd_power(rho_e, Complex(-0.5, -t / 2.0), cutoff);
    for (int a = 0; a < dim_a; ++a) {
      CMatrix k = CMatrix::Zero(out_rows, dim_e);
      k.topRows(static_cast<Eigen::Index>(dim_a) * dim_e) =
          std::sqrt(w) * r.middleCols(static_cast<Eigen::Index>(a) * dim_e, dim_e) * q;
      kraus.push_back(std::move(k));
    }
  }
  CMatrix abort = CMatrix::Zero(out_rows, dim_e);
  abort.bottomRows(dim_e) =
      CMatrix::Identity(dim_e, dim_e) - support_projector(rho_e, cutoff);
  if (abort.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(abort));
  return RecoveryChannel(kind, cutoff, dim_a, dim_e, std::move(kraus));
}

RecoveryChannel build_recovery_channel(const MultipartiteState& state, const Labels& a,
                                       const Labels& e, RecoveryKind kind,
                                       const NumericPolicy& policy, const RotationGrid& grid) {
  Labels ae = a;
  ae.insert(ae.end(), e.begin(), e.end());
  const MultipartiteState r = state.reduced(ae);
  return build_recovery_channel(r.density(), static_cast<int>(state.dimension_of(a)),
                                static_cast<int>(state.dimension_of(e)), kind, policy, grid);
}

MultipartiteState apply_channel(const RecoveryChannel& ch, const MultipartiteState& state,
                                const Labels& e, const std::string& a_out_label) {
  if (state.contains(a_out_label)) {
    throw InvalidArgument("apply_channel: state already has a system '" + a_out_label + "'");
  }
  if (static_cast<int>(state.dimension_of(e)) != ch.dim_e()) {
    throw DimensionMismatch("apply_channel: E systems have dim " +
                            std::to_string(state.dimension_of(e)) + ", channel expects " +
                            std::to_string(ch.dim_e()));
  }
  Labels order = e;
  Labels rest;
  for (const auto& l : state.labels()) {
    if (std::find(e.begin(), e.end(), l) == e.end()) rest.push_back(l);
  }
  order.insert(order.end(), rest.begin(), rest.end());
  const MultipartiteState st = state.permuted(order);
  const auto dr = static_cast<Eigen::Index>(state.dimension_of(rest));
  const CMatrix id_r = CMatrix::Identity(dr, dr);
  const auto out_dim = static_cast<Eigen::Index>(ch.dim_a_out()) * ch.dim_e() * dr;
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (const auto& k : ch.kraus()) {
    const CMatrix kk = kron(k, id_r);
    out += kk * st.density() * kk.adjoint();
  }
  std::vector<System> systems = {{a_out_label, ch.dim_a_out()}};
  for (const auto& l : order) systems.push_back(st.systems()[st.index_of(l)]);
  Labels final_order = {a_out_label};
  for (const auto& l : state.labels()) final_order.push_back(l);
  return MultipartiteState(std::move(systems), std::move(out)).permuted(final_order);
}

double fawzi_renner_bound(double cmi_bits) {
  return std::sqrt(std::numbers::ln2 * std::max(cmi_bits, 0.0));
}

RecoveryReport evaluate_recovery(const MultipartiteState& state, const Labels& a, const Labels& e,
                                 RecoveryKind kind, const NumericPolicy& policy,
                                 const RotationGrid& grid) {
  Labels b;
  for (const auto& l : state.labels()) {
    if (std::find(a.begin(), a.end(), l) == a.end() && std::find(e.begin(), e.end(), l) == e.end()) {
      b.push_back(l);
    }
  }
  const RecoveryChannel ch = build_recovery_channel(state, a, e, kind, policy, grid);

  Labels aeb = a;
  aeb.insert(aeb.end(), e.begin(), e.end());
  aeb.insert(aeb.end(), b.begin(), b.end());
  const MultipartiteState ordered = state.reduced(aeb);
  std::vector<System> merged = {{"A'", static_cast<int>(state.dimension_of(a))}};
  for (std::size_t k = a.size(); k < ordered.systems().size(); ++k) {
    merged.push_back(ordered.systems()[k]);
  }
  const MultipartiteState rho = pad_system(MultipartiteState(merged, ordered.density()), "A'",
                                           ch.dim_a_out(), "A'");
  Labels eb = e;
  eb.insert(eb.end(), b.begin(), b.end());
  const MultipartiteState sigma = apply_channel(ch, state.reduced(eb), e, "A'");

  RecoveryReport r;
  r.trace_distance = trace_distance(sigma, rho);
  r.cmi = b.empty() ? 0.0 : cmi(state, a, b, e, policy);
  r.fr_bound = fawzi_renner_bound(r.cmi);
  r.slack = r.fr_bound - r.trace_distance;
  const CMatrix sigma_a = sigma.reduced({"A'"}).density();
  r.abort_probability = sigma_a(ch.abort_symbol(), ch.abort_symbol()).real();
  return r;
}

nlohmann::json to_json(const RecoveryChannel& ch) {
  return {{"kind", to_string(ch.kind())},
          {"cutoff", ch.cutoff()},
          {"dim_e", ch.dim_e()},
          {"dim_a_out", ch.dim_a_out()},
          {"abort_symbol", ch.abort_symbol()},
          {"choi", matrix_to_json(ch.choi())}};
}

}  // namespace qromlab::info_theory
