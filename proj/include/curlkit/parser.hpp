#pragma once

#include <string>

#include "curlkit/poly.hpp"

namespace curlkit {

/// Parse a polynomial Hamiltonian in the Darboux variables x1..xℓ, y1..yℓ, z
/// (x and y are accepted as aliases of x1 and y1). Grammar: + − * ^ with
/// nonnegative integer exponents, rational literals p/q, parentheses.
/// Errors carry the 1-based column.
Poly parse_hamiltonian(const std::string& text, int ell);

/// Canonical rendering; parse(print(p)) == p.
std::string print_poly(const Poly& poly, int ell);

}  // namespace curlkit
