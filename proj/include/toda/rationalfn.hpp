#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "toda/laurent.hpp"

namespace toda {

/// Substitution for a RationalFn can hit an uncancellable zero denominator.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Image of a symbol under substitution: a monomial, or the regular limit 0.
struct SubstImage {
  std::optional<Monomial> mono;  // nullopt means substitute zero
  static SubstImage zero() { return {}; }
  static SubstImage to(const Monomial& m) { return {m}; }
};

using SubstMap = std::map<SymbolId, SubstImage>;

/// Exact rational function num / prod(factors).  The denominator is kept as
/// a multiset of unit-normalized factors; the recursions only ever divide by
/// binomials (1 - monomial), so this form stays cancellation-friendly
/// without general multivariate GCDs.  Canonicalization removes denominator
/// factors dividing the numerator, folds units, and sorts the factor list,
/// so values produced along different routes compare equal whenever the
/// factors themselves match; rf_equal decides equality by cross-multiplying
/// and is exact regardless.
class RationalFn {
 public:
  RationalFn() = default;                       // zero
  RationalFn(const Rational& c);                // NOLINT: constant
  RationalFn(long c) : RationalFn(Rational(c)) {}
  RationalFn(const LaurentPoly& p);             // NOLINT: polynomial
  explicit RationalFn(const Monomial& m, const Rational& c = 1);
  RationalFn(LaurentPoly num, std::vector<LaurentPoly> den_factors);

  static RationalFn zero() { return {}; }
  static RationalFn one() { return RationalFn(Rational(1)); }
  /// 1 / prod(factors)
  static RationalFn reciprocal(std::vector<LaurentPoly> factors);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.empty(); }
  const LaurentPoly& num() const { return num_; }
  const std::vector<LaurentPoly>& den_factors() const { return den_; }
  LaurentPoly den() const;  // expanded product
  /// true when the denominator is trivial (the value is a Laurent polynomial)
  bool is_polynomial() const { return den_.empty(); }

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b) = default;

  RationalFn mul_monomial(const Monomial& m) const;
  RationalFn pow(std::int64_t k) const;

  /// Exact composition; monomial images and regular limits at zero.
  /// Throws PoleError when a denominator factor vanishes and cannot be
  /// cancelled against the numerator.
  RationalFn substitute(const SubstMap& images) const;

  /// q^{1/N} -> q^{-1/N}; symbol variables fixed.
  RationalFn invert_q() const;

  /// q^e -> q^{s e} on every monomial; the scaled exponents must stay in
  /// the lattice (1/N)Z.
  RationalFn scale_q_exponents(const Rational& s) const;

  std::string str() const;

 private:
  void canonicalize();
  void push_factor(LaurentPoly f);  // normalizes and folds units

  LaurentPoly num_;
  std::vector<LaurentPoly> den_;  // sorted multiset of normalized factors
};

enum class ArithOp { add, sub, mul, div };

/// Field arithmetic entry point; op = div requires b nonzero.
RationalFn arith(const RationalFn& a, const RationalFn& b, ArithOp op);

enum class EqualityMode { exact, probabilistic };
enum class EqualityResult { equal, not_equal, inconclusive };

/// Exact mode cross-multiplies after cancelling shared denominator factors.
/// Probabilistic mode evaluates both sides at `points` random rational
/// points (seeded) that avoid denominator zeros; it reports inconclusive if
/// it cannot find at least three valid points.
EqualityResult rf_equal_detail(const RationalFn& a, const RationalFn& b, EqualityMode mode,
                               std::uint64_t seed = 0x5eed, int points = 5);
bool rf_equal(const RationalFn& a, const RationalFn& b,
              EqualityMode mode = EqualityMode::exact);

}  // namespace toda
