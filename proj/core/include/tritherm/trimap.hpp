#pragma once

#include <vector>

#include "tritherm/digits.hpp"
#include "tritherm/pair.hpp"

namespace tritherm {

// The sector index k with 1 - alpha - k*beta >= 0 > 1 - alpha - (k+1)*beta.
// Left inequality non-strict, right strict: a point with
// 1 - alpha - (k+1)*beta = 0 belongs to sector k+1.
Int sector_index(const PairRepr& pair);

// One step of the map: (beta/alpha, (1 - alpha - k*beta)/alpha).
PairRepr apply_T(const PairRepr& pair);

// The first `depth` digits (a_1, ..., a_depth), or a shorter terminated
// sequence when the orbit lands on beta = 0. For real pairs every digit is
// certified; an unresolvable comparison raises PrecisionExhausted carrying
// the certified prefix (termination itself is never certifiable from an
// inexact pair).
DigitSequence triangle_sequence(const PairRepr& pair, long depth);

// [pair, T(pair), ..., T^depth(pair)], truncated after the first point with
// beta = 0.
std::vector<PairRepr> orbit(const PairRepr& pair, long depth);

}  // namespace tritherm
