#pragma once

#include <string>

#include "dpres/algebra.hpp"
#include "dpres/dpmatrix.hpp"

namespace dpres {

/// Parses the line-oriented .dpm format:
///
///   field <p|QQ>
///   vars <n>
///   weights <d1> ... <dn>      (optional, default all 1)
///   rowtwists <a1> ... <aq>
///   coltwists <b1> ... <bp>
///   entry <i> <j> : <dp-poly>  (1-based, omitted entries are zero)
///
/// '#' starts a comment. Errors are ParseError with "line L, column C".
DPMatrix parse_dpmatrix(const std::string& text);
DPMatrix read_dpmatrix_file(const std::string& path);

/// A dp-poly term list such as "2*X1^(2)*X2 - X3", in the given ring.
DPPolynomial parse_dp_polynomial(const Ring& ring, const std::string& text);

/// Inverse of parse_dpmatrix (zero entries omitted).
std::string render_dpmatrix(const DPMatrix& p);

}  // namespace dpres
