#pragma once

#include "toda/rationalfn.hpp"

namespace toda {

/// (w)_n = prod_{i=1..n} (1 - q^{i-1} w); empty product for n = 0.
LaurentPoly pochhammer(const Monomial& w, int n);
/// Same product kept as a factor list (for building denominators).
std::vector<LaurentPoly> pochhammer_factors(const Monomial& w, int n);

/// (q^d; q^d)_n
LaurentPoly qd_pochhammer(int d, int n);
std::vector<LaurentPoly> qd_pochhammer_factors(int d, int n);

/// q-binomial [gamma over n] = (q^{gamma-n+1})_n / (q)_n for integer gamma.
RationalFn qbinom(std::int64_t gamma, int n);
/// Symbolic gamma: q^gamma is supplied as a monomial (e.g. in an angle symbol).
RationalFn qbinom(const Monomial& q_gamma, int n);

}  // namespace toda
