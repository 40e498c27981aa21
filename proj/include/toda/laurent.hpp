#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toda/monomial.hpp"

namespace toda {

/// Sparse multivariate Laurent polynomial over Q with exact coefficients.
/// Terms are kept sorted in the canonical monomial order with no zero
/// coefficients, so equal polynomials have identical representations.
class LaurentPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constant polynomial
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}
  explicit LaurentPoly(const Monomial& m, const Rational& c = 1);

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return LaurentPoly(Rational(1)); }
  /// 1 - w
  static LaurentPoly one_minus(const Monomial& w);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  /// single-term test; returns the term if so
  const Term* single_term() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Rational coeff(const Monomial& m) const;
  /// constant coefficient (of the monomial 1)
  Rational constant_coeff() const { return coeff(Monomial::one()); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  void add_term(const Monomial& m, const Rational& c);
  LaurentPoly mul_monomial(const Monomial& m) const;
  LaurentPoly mul_scalar(const Rational& c) const;

  /// Exact division by a one- or two-term divisor; nullopt if not divisible
  /// (or if the divisor has three or more terms, which is unsupported).
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;

  /// q^{1/N} -> q^{-1/N} on every term
  LaurentPoly invert_q() const;

  /// Simultaneous substitution of symbols by monomials.  Symbols absent from
  /// the map are left alone.  Distinct monomials may collapse; the result is
  /// re-normalized (and may be zero).
  LaurentPoly substitute(const std::map<SymbolId, Monomial>& images) const;

  /// Minimum exponent of `s` over all terms (0 for the zero polynomial).
  std::int32_t valuation(SymbolId s) const;
  /// Keep the terms with exponent v of `s` and strip s^v from them:
  /// the coefficient of s^v viewed in the remaining variables.
  LaurentPoly coefficient_of(SymbolId s, std::int32_t v) const;
  bool contains_symbol(SymbolId s) const;

  /// Exact evaluation; point maps q^{1/N} (key nullopt via q_value) and each
  /// symbol to a rational.  Unmapped symbols are an error.
  Rational evaluate(const Rational& q_root_value, const std::map<SymbolId, Rational>& point) const;

  /// Unit normalization for denominator factors: divides out the monomial
  /// gcd and the leading coefficient so that the smallest monomial term is
  /// exactly 1.  Returns the extracted unit (monomial, coefficient).
  std::pair<Monomial, Rational> normalize_unit();

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;
  friend std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b);

  std::string str() const;

 private:
  std::vector<Term> terms_;  // sorted by monomial, no zero coefficients
};

}  // namespace toda
