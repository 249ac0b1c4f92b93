#include "qromlab/info_theory/multipartite_state.hpp"

#include <cmath>
#include <set>

#include "qromlab/error.hpp"

namespace qromlab::info_theory {

namespace {

std::size_t total_dim(const std::vector<System>& systems) {
  std::size_t d = 1;
  for (const auto& s : systems) d *= static_cast<std::size_t>(s.dim);
  return d;
}

std::string describe(const std::vector<System>& systems) {
  std::string out;
  for (const auto& s : systems) {
    out += (out.empty() ? "" : ", ") + s.label + "(" + std::to_string(s.dim) + ")";
  }
  return out;
}

// Mixed-radix digits of x; the first system is most significant.
std::vector<std::size_t> digits(std::size_t x, const std::vector<System>& systems) {
  std::vector<std::size_t> out(systems.size());
  for (std::size_t k = systems.size(); k-- > 0;) {
    const auto d = static_cast<std::size_t>(systems[k].dim);
    out[k] = x % d;
    x /= d;
  }
  return out;
}

std::size_t compose(const std::vector<std::size_t>& dig, const std::vector<std::size_t>& pick,
                    const std::vector<System>& systems) {
  std::size_t x = 0;
  for (auto k : pick) x = x * static_cast<std::size_t>(systems[k].dim) + dig[k];
  return x;
}

}  // namespace

MultipartiteState::MultipartiteState(std::vector<System> systems, CMatrix rho)
    : systems_(std::move(systems)), rho_(std::move(rho)) {
  std::set<std::string> seen;
  for (const auto& s : systems_) {
    if (!seen.insert(s.label).second) {
      throw InvalidArgument("MultipartiteState: duplicate label '" + s.label + "'");
    }
    if (s.dim < 1) throw InvalidArgument("MultipartiteState: system '" + s.label + "' has dim < 1");
  }
  const auto d = static_cast<Eigen::Index>(total_dim(systems_));
  if (rho_.rows() != d || rho_.cols() != d) {
    throw DimensionMismatch("MultipartiteState: matrix is " + std::to_string(rho_.rows()) + "x" +
                            std::to_string(rho_.cols()) + " but systems [" + describe(systems_) +
                            "] need " + std::to_string(d));
  }
}

MultipartiteState MultipartiteState::from_pure(std::vector<System> systems, const CVector& psi) {
  return MultipartiteState(std::move(systems), psi * psi.adjoint());
}

MultipartiteState MultipartiteState::product(const MultipartiteState& a,
                                             const MultipartiteState& b) {
  auto systems = a.systems_;
  systems.insert(systems.end(), b.systems_.begin(), b.systems_.end());
  return MultipartiteState(std::move(systems), kron(a.rho_, b.rho_));
}

Labels MultipartiteState::labels() const {
  Labels out;
  for (const auto& s : systems_) out.push_back(s.label);
  return out;
}

bool MultipartiteState::contains(const std::string& label) const {
  for (const auto& s : systems_) {
    if (s.label == label) return true;
  }
  return false;
}

std::size_t MultipartiteState::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < systems_.size(); ++k) {
    if (systems_[k].label == label) return k;
  }
  throw InvalidArgument("unknown system '" + label + "' (state has: " + describe(systems_) + ")");
}

std::size_t MultipartiteState::dimension_of(const Labels& labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= static_cast<std::size_t>(systems_[index_of(l)].dim);
  return d;
}

MultipartiteState MultipartiteState::reduced(const Labels& keep) const {
  std::vector<std::size_t> kept;
  std::vector<char> is_kept(systems_.size(), 0);
  std::vector<System> out_systems;
  for (const auto& l : keep) {
    const auto k = index_of(l);
    if (is_kept[k]) throw InvalidArgument("reduced: label '" + l + "' listed twice");
    is_kept[k] = 1;
    kept.push_back(k);
    out_systems.push_back(systems_[k]);
  }
  if (kept.size() == systems_.size()) {
    bool identity = true;
    for (std::size_t k = 0; k < kept.size(); ++k) identity = identity && kept[k] == k;
    if (identity) return *this;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < systems_.size(); ++k) {
    if (!is_kept[k]) rest.push_back(k);
  }
  const std::size_t dk = total_dim(out_systems);
  std::size_t dr = 1;
  for (auto k : rest) dr *= static_cast<std::size_t>(systems_[k].dim);
  // Group full indices by their traced-out part.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(dr);
  for (std::size_t x = 0; x < dimension(); ++x) {
    const auto dig = digits(x, systems_);
    groups[compose(dig, rest, systems_)].emplace_back(x, compose(dig, kept, systems_));
  }
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (const auto& g : groups) {
    for (const auto& [x, a] : g) {
      for (const auto& [y, b] : g) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      }
    }
  }
  return MultipartiteState(std::move(out_systems), std::move(out));
}

MultipartiteState MultipartiteState::permuted(const Labels& order) const {
  if (order.size() != systems_.size()) {
    throw InvalidArgument("permuted: order must list every system exactly once");
  }
  return reduced(order);
}

MultipartiteState MultipartiteState::relabeled(const std::string& from,
                                               const std::string& to) const {
  auto systems = systems_;
  systems[index_of(from)].label = to;
  return MultipartiteState(std::move(systems), rho_);
}

void MultipartiteState::validate(const NumericPolicy& policy) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > policy.norm_tol) {
    throw InvariantViolation("MultipartiteState: matrix is not Hermitian");
  }
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > policy.probability_sum_tol) {
    throw InvariantViolation("MultipartiteState: trace is " + std::to_string(tr));
  }
  const RVector ev = hermitian_eigenvalues(rho_);
  if (ev.minCoeff() < -policy.psd_tol) {
    throw InvariantViolation("MultipartiteState: eigenvalue " + std::to_string(ev.minCoeff()));
  }
}

MultipartiteState pad_system(const MultipartiteState& state, const std::string& label,
                             int new_dim, const std::string& new_label) {
  const auto& systems = state.systems();
  const std::size_t k = state.index_of(label);
  if (new_dim < systems[k].dim) {
    throw DimensionMismatch("pad_system: cannot shrink '" + label + "'");
  }
  auto out_systems = systems;
  out_systems[k] = {new_label, new_dim};
  const std::size_t d = total_dim(out_systems);
  std::vector<std::size_t> all(systems.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::size_t> map(state.dimension());
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    map[x] = compose(digits(x, systems), all, out_systems);
  }
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const auto& rho = state.density();
  for (std::size_t x = 0; x < map.size(); ++x) {
    for (std::size_t y = 0; y < map.size(); ++y) {
      out(static_cast<Eigen::Index>(map[x]), static_cast<Eigen::Index>(map[y])) =
          rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
  }
  return MultipartiteState(std::move(out_systems), std::move(out));
}

double trace_distance(const MultipartiteState& rho, const MultipartiteState& sigma) {
  if (rho.systems() != sigma.systems()) {
    throw DimensionMismatch("trace_distance: system lists differ: [" + describe(rho.systems()) +
                            "] vs [" + describe(sigma.systems()) + "]");
  }
  const CMatrix diff = rho.density() - sigma.density();
  return half_trace_norm(0.5 * (diff + diff.adjoint()));
}

nlohmann::json to_json(const MultipartiteState& state) {
  nlohmann::json labels = nlohmann::json::array();
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& s : state.systems()) {
    labels.push_back(s.label);
    dims.push_back(s.dim);
  }
  return {{"labels", labels}, {"dims", dims}, {"matrix", matrix_to_json(state.density())}};
}

MultipartiteState multipartite_from_json(const nlohmann::json& j) {
  const auto labels = j.at("labels").get<std::vector<std::string>>();
  const auto dims = j.at("dims").get<std::vector<int>>();
  if (labels.size() != dims.size()) {
    throw DimensionMismatch("state JSON: labels and dims have different lengths");
  }
  std::vector<System> systems;
  for (std::size_t k = 0; k < labels.size(); ++k) systems.push_back({labels[k], dims[k]});
  return MultipartiteState(std::move(systems), matrix_from_json(j.at("matrix")));
}

}  // namespace qromlab::info_theory
