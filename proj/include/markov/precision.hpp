#pragma once

#include <boost/multiprecision/float128.hpp>

namespace markov {

/// 113-bit significand scalar used where monomial expansions of high-degree
/// extremal polynomials would otherwise cancel catastrophically.
using Wide = boost::multiprecision::float128;

}  // namespace markov
