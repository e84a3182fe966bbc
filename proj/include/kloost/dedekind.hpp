#pragma once

#include "kloost/exact_arith.hpp"

namespace kloost {

/// s(d, c) as an exact rational. 12 c s(d, c) is always an integer.
struct DedekindValue {
  Rational value;
  friend bool operator==(const DedekindValue&, const DedekindValue&) = default;
};

/// ((x)) = x - floor(x) - 1/2 for non-integral x, 0 for integral x.
Rational sawtooth(const Rational& x);

/// Definitional sum over r mod c of ((r/c))((dr/c)). O(c).
DedekindValue dedekind_def(Int d, Int c);

/// Reciprocity (Euclid-style) evaluation, O(log c). Requires gcd(d, c) = 1.
DedekindValue dedekind_fast(Int d, Int c);

/// 6c * s(d, c) as an integer, computed by the same reciprocity recursion
/// in 128-bit arithmetic. Requires gcd(d, c) = 1 and c >= 1.
Int dedekind_times_6c(Int d, Int c);

}  // namespace kloost
