#pragma once

#include <gmpxx.h>

#include <string>

namespace orlat {

// Exact rational weights for the oracle's "unimpeachable" mode.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline std::string num_string(const Rational& q) { return q.get_num().get_str(); }
inline std::string den_string(const Rational& q) { return q.get_den().get_str(); }

// Converts a kernel probability into the weight type of a distribution.
template <class W>
W weight_cast(const Rational& q);

template <>
inline Rational weight_cast<Rational>(const Rational& q) { return q; }

template <>
inline double weight_cast<double>(const Rational& q) { return q.get_d(); }

}  // namespace orlat
