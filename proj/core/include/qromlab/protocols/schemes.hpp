#pragma once

#include <string>
#include <vector>

#include "qromlab/protocols/qpke.hpp"

namespace qromlab::protocols {

/// sk = r uniform; pk = (r, H(r)); ct = b xor H(r).
QPKEScheme pointer_scheme(int n);
/// sk = (r, s); pk = (r xor s, H(r)); Enc queries in superposition over
/// {u, u xor 1} before masking with the pk bit.
QPKEScheme masked_pointer_scheme(int n);
/// sk = r; pk = (|r> + |r xor 1>)/sqrt2 made with no queries; the
/// ciphertext is quantum.
QPKEScheme quantum_pk_scheme(int n);
/// sk = r; pk = H(r) only; ct = b xor pk with no queries.
QPKEScheme hidden_pointer_scheme(int n);
/// sk = pk = H(r) for a uniform superposition of r; Dec makes one unused
/// query.
QPKEScheme sum_pointer_scheme(int n);
/// Pointer scheme whose Dec queries r with bit 0 cleared.
QPKEScheme broken_pointer_scheme(int n);

/// Short names: S1..S5 and "broken"; long names as in the functions above
/// (pointer, masked-pointer, quantum-pk, hidden-pointer, sum-pointer,
/// broken-pointer).
QPKEScheme make_scheme(const std::string& name, int n);
std::vector<std::string> scheme_names();
bool is_scheme_name(const std::string& name);

}  // namespace qromlab::protocols
