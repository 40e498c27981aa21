#include "toda/qseries.hpp"

namespace toda {

std::vector<LaurentPoly> pochhammer_factors(const Monomial& w, int n) {
  std::vector<LaurentPoly> fs;
  fs.reserve(n);
  for (int i = 1; i <= n; ++i) fs.push_back(LaurentPoly::one_minus(Monomial::q_pow(std::int64_t(i - 1)) * w));
  return fs;
}

LaurentPoly pochhammer(const Monomial& w, int n) {
  LaurentPoly p = LaurentPoly::one();
  for (const auto& f : pochhammer_factors(w, n)) p *= f;
  return p;
}

std::vector<LaurentPoly> qd_pochhammer_factors(int d, int n) {
  std::vector<LaurentPoly> fs;
  fs.reserve(n);
  for (int i = 1; i <= n; ++i) fs.push_back(LaurentPoly::one_minus(Monomial::q_pow(std::int64_t(d) * i)));
  return fs;
}

LaurentPoly qd_pochhammer(int d, int n) {
  LaurentPoly p = LaurentPoly::one();
  for (const auto& f : qd_pochhammer_factors(d, n)) p *= f;
  return p;
}

RationalFn qbinom(std::int64_t gamma, int n) {
  return qbinom(Monomial::q_pow(gamma), n);
}

RationalFn qbinom(const Monomial& q_gamma, int n) {
  // numerator (q^{gamma-n+1})_n expands to prod_{i=1..n} (1 - q^{i-n} q^gamma)
  LaurentPoly num = LaurentPoly::one();
  for (int i = 1; i <= n; ++i)
    num *= LaurentPoly::one_minus(Monomial::q_pow(std::int64_t(i - n)) * q_gamma);
  return RationalFn(std::move(num), qd_pochhammer_factors(1, n));
}

}  // namespace toda
