#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toda {

using Rational = mpq_class;

/// Makes a canonical rational (gcd-reduced, positive denominator).
inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

using SymbolId = std::uint32_t;

// Global interned symbol table.  Ids are stable for the lifetime of the
// process; registration is thread-safe.
SymbolId symbol(const std::string& name);
const std::string& symbol_name(SymbolId id);

// Exponents of q live in (1/N)Z for a process-wide lattice denominator N.
// Default N = 2, which covers the half-integer powers appearing for the
// non-simply-laced series.  Must be set before any Monomial is built.
void set_q_lattice_den(std::int64_t n);
std::int64_t q_lattice_den();

/// A term q^{u/N} * prod_i x_i^{e_i} with integer symbol exponents.
class Monomial {
 public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }
  /// q^{units/N}
  static Monomial q_units_pow(std::int64_t units);
  /// q^e for integer e
  static Monomial q_pow(std::int64_t e);
  /// q^e for rational e (must lie in the lattice)
  static Monomial q_pow(const Rational& e);
  static Monomial sym(SymbolId id, std::int32_t e = 1);
  static Monomial sym(const std::string& name, std::int32_t e = 1);

  std::int64_t q_units() const { return q_units_; }
  Rational q_exponent() const;
  const std::vector<std::pair<SymbolId, std::int32_t>>& syms() const { return syms_; }

  bool is_one() const { return q_units_ == 0 && syms_.empty(); }
  bool has_symbols() const { return !syms_.empty(); }
  std::int32_t exponent_of(SymbolId id) const;

  Monomial& operator*=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  Monomial inverse() const;
  Monomial pow(std::int64_t k) const;
  /// q^{u/N} -> q^{-u/N}, symbols fixed
  Monomial invert_q() const;

  // Canonical total order: (q exponent, then symbol exponent vector).
  friend auto operator<=>(const Monomial& a, const Monomial& b) = default;
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::size_t hash() const;
  std::string str() const;  // human-readable, e.g. "q^{3/2} z1^-1"

 private:
  std::int64_t q_units_ = 0;
  // sorted by SymbolId, no zero exponents
  std::vector<std::pair<SymbolId, std::int32_t>> syms_;
};

}  // namespace toda

template <>
struct std::hash<toda::Monomial> {
  std::size_t operator()(const toda::Monomial& m) const { return m.hash(); }
};
