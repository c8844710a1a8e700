#pragma once

#include <boost/rational.hpp>

#include <cstdint>

namespace trotter {

// Exact rational arithmetic for all geometric error coefficients.
// Values stay small (bounded by grid moments, O(p^2 q)), so 64-bit
// numerators are plenty for the grids we refuse to exceed.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace trotter
