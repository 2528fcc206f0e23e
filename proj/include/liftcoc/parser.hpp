#pragma once

// Operator expression surface syntax:
//   expr     := ('-')? term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := rational | atom ('^' signedInt)? | '(' expr ')'
//   atom     := 'x'IDX | 'd'IDX | 'E' '[' IDX ',' IDX ']' | 'ID' | 'L'
//   rational := INT ('/' INT)?
// Whitespace is insignificant.  x<i>/d<i> are the symbol generators (1-based
// variable index), E[i,j] the matrix units, ID the identity matrix, L a
// rational parameter bound at parse time.  Negative powers are admitted on
// the x/d generators only.

#include "liftcoc/matrix_op.hpp"

#include <optional>
#include <string>

namespace liftcoc {

AugmentedOp parse_operator(const std::string &text, int nvars, const TruncationPolicy &policy,
                           const std::optional<Rat> &lambda = std::nullopt);

// Canonical text form; parse_operator(print_operator(v)) == v.
std::string print_operator(const AugmentedOp &v);

} // namespace liftcoc
