#include "qromlab/boolean_poly/reprogram.hpp"

#include <bit>
#include <functional>
#include <set>

#include "qromlab/error.hpp"

namespace qromlab::boolean_poly {

namespace {

std::vector<std::uint64_t> bits_of(std::uint64_t mask) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

std::string to_string(ReprogramCase c) { return c == ReprogramCase::A ? "A" : "B"; }

std::vector<std::uint64_t> maximal_disjoint_maximum_monomials(const MultilinearPoly& f) {
  if (f.is_zero()) throw InvalidArgument("maximal_disjoint_maximum_monomials: f is identically zero");
  const int deg = f.degree();
  std::vector<std::uint64_t> chosen;
  std::uint64_t used = 0;
  for (const auto& [mask, v] : f.coeffs()) {
    if (std::popcount(mask) == deg && (mask & used) == 0) {
      chosen.push_back(mask);
      used |= mask;
    }
  }
  return chosen;
}

PartialAssignment alon_fixing(const MultilinearPoly& f, std::uint64_t monomial, std::uint64_t h) {
  const auto vars = bits_of(monomial);
  const std::size_t k = vars.size();
  if (f.coefficient(monomial) == 0.0 || static_cast<int>(k) != f.degree()) {
    throw InvalidArgument("alon_fixing: " + std::to_string(monomial) + " is not a maximum monomial of f");
  }
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
    PartialAssignment mu;
    for (std::size_t j = 0; j < k; ++j) {
      mu.set(vars[j], ((pattern >> (k - 1 - j)) & 1U) ? -1 : 1);
    }
    if (f.nonzero_at(mu.apply(h))) return mu;
  }
  throw InvariantViolation("alon_fixing: no assignment on monomial " + std::to_string(monomial) +
                           " makes f nonzero; the zero threshold (" +
                           std::to_string(f.zero_threshold()) + ") is likely miscalibrated");
}

ReprogramOutcome reprogram(const MultilinearPoly& f, int m) {
  if (m < 1) throw InvalidArgument("reprogram: m must be positive");
  if (f.is_zero()) throw InvalidArgument("reprogram: f is identically zero");
  ReprogramOutcome out;
  out.input_degree = f.degree();
  MultilinearPoly ft = f;
  for (;;) {
    if (ft.degree() == 0) {
      out.case_tag = ReprogramCase::A;
      break;
    }
    const auto monomials = maximal_disjoint_maximum_monomials(ft);
    out.disjoint_set_size_at_stop = static_cast<int>(monomials.size());
    if (static_cast<int>(monomials.size()) > m) {
      out.case_tag = ReprogramCase::B;
      out.disjoint_monomials = monomials;
      break;
    }
    ++out.rounds_used;
    for (auto mono : monomials) {
      for (auto i : bits_of(mono)) {
        bool fixed = false;
        for (int b : {1, -1}) {
          MultilinearPoly g = restrict(ft, PartialAssignment({{i, b}}));
          if (!g.is_zero()) {
            ft = std::move(g);
            out.mu.set(i, b);
            fixed = true;
            break;
          }
        }
        if (!fixed) {
          throw InvariantViolation("reprogram: both values of x_" + std::to_string(i) +
                                   " make the polynomial vanish under threshold " +
                                   std::to_string(ft.zero_threshold()));
        }
      }
    }
    if (out.rounds_used > out.input_degree) {
      throw InvariantViolation("reprogram: more rounds than the input degree");
    }
  }
  out.restricted = std::move(ft);
  return out;
}

std::vector<PartialAssignment> case_b_fixers(const ReprogramOutcome& outcome, int m,
                                             std::uint64_t h) {
  if (outcome.case_tag != ReprogramCase::B) {
    throw InvalidArgument("case_b_fixers: outcome is case A");
  }
  std::vector<PartialAssignment> out;
  for (int l = 0; l < m && l < static_cast<int>(outcome.disjoint_monomials.size()); ++l) {
    out.push_back(alon_fixing(outcome.restricted,
                              outcome.disjoint_monomials[static_cast<std::size_t>(l)], h));
  }
  return out;
}

bool verify_reprogram_outcome(const MultilinearPoly& f, const ReprogramOutcome& outcome, int m) {
  const int n = f.num_vars();
  if (n > 16) throw SizeLimitExceeded("verify_reprogram_outcome: N > 16");
  const int deg = f.degree();
  if (static_cast<long>(outcome.mu.size()) > static_cast<long>(m) * deg * deg) return false;
  const std::vector<double> values = f.evaluate_all();
  const double thr = f.zero_threshold();
  const std::size_t points = std::size_t{1} << n;
  auto nonzero = [&](std::uint64_t h) { return std::abs(values[h]) > thr; };

  if (outcome.case_tag == ReprogramCase::A) {
    for (std::uint64_t h = 0; h < points; ++h) {
      if (!nonzero(outcome.mu.apply(h))) return false;
    }
    return true;
  }

  const std::uint64_t fixed = outcome.mu.support_mask();
  std::set<std::uint64_t> candidates;
  for (const auto& [mask, v] : f.coeffs()) {
    const std::uint64_t t = mask & ~fixed;
    if (t != 0 && std::popcount(t) <= deg) candidates.insert(t);
  }
  const std::vector<std::uint64_t> cand(candidates.begin(), candidates.end());
  for (std::uint64_t h = 0; h < points; ++h) {
    std::vector<std::uint64_t> good;
    for (auto t : cand) {
      const auto vars = bits_of(t);
      bool ok = false;
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << vars.size()) && !ok; ++p) {
        std::uint64_t x = h;
        for (std::size_t j = 0; j < vars.size(); ++j) {
          const std::uint64_t bit = std::uint64_t{1} << vars[j];
          x = ((p >> j) & 1U) ? (x | bit) : (x & ~bit);
        }
        ok = nonzero(outcome.mu.apply(x));
      }
      if (ok) good.push_back(t);
    }
    std::function<bool(std::size_t, int, std::uint64_t)> pick = [&](std::size_t from, int need,
                                                                   std::uint64_t used) {
      if (need == 0) return true;
      for (std::size_t k = from; k < good.size(); ++k) {
        if ((good[k] & used) == 0 && pick(k + 1, need - 1, used | good[k])) return true;
      }
      return false;
    };
    if (!pick(0, m, 0)) return false;
  }
  return true;
}

}  // namespace qromlab::boolean_poly
