#pragma once

#include <nlohmann/json.hpp>

namespace qromlab {

/// Every tolerance used by the library lives here so that a run can be
/// reproduced (and reported) from a single record.
struct NumericPolicy {
  double unitarity_tol = 1e-10;       // ||U^dag U - I||_max
  double norm_tol = 1e-10;            // pure-state norm, density-matrix trace
  double probability_sum_tol = 1e-9;  // output distributions
  double eigenvalue_clamp = 1e-12;    // eigenvalues below this contribute 0 log 0
  double psd_tol = 1e-10;             // smallest admissible eigenvalue is -psd_tol
  double support_threshold = 1e-12;   // SUPP(D) := { x : D(x) > support_threshold }
  double coeff_zero_rel = 1e-9;       // |a_S| <= coeff_zero_rel * max|a| counts as zero
  double pinv_cutoff = 1e-10;         // eigenvalues of rho_E excluded from rho_E^{-1/2}
  double cmi_negative_tol = 1e-8;     // CMI >= -tol is reported as "consistent with SSA"
  double permutation_tol = 1e-7;      // swap-symmetry check on copies
  double channel_tp_tol = 1e-8;       // trace preservation of recovery channels
};

inline const NumericPolicy& default_policy() {
  static const NumericPolicy policy{};
  return policy;
}

inline nlohmann::json to_json(const NumericPolicy& p) {
  return {{"unitarity_tol", p.unitarity_tol},
          {"norm_tol", p.norm_tol},
          {"probability_sum_tol", p.probability_sum_tol},
          {"eigenvalue_clamp", p.eigenvalue_clamp},
          {"psd_tol", p.psd_tol},
          {"support_threshold", p.support_threshold},
          {"coeff_zero_rel", p.coeff_zero_rel},
          {"pinv_cutoff", p.pinv_cutoff},
          {"cmi_negative_tol", p.cmi_negative_tol},
          {"permutation_tol", p.permutation_tol},
          {"channel_tp_tol", p.channel_tp_tol}};
}

}  // namespace qromlab
