#pragma once

#include <string>
#include <vector>

#include "toda/qseries.hpp"

namespace toda {

/// beta in Q_+ as simple-root multiplicities.
struct RootElement {
  std::vector<int> m;

  RootElement() = default;
  explicit RootElement(std::vector<int> v) : m(std::move(v)) {}
  static RootElement zero(int rank) { return RootElement(std::vector<int>(rank, 0)); }
  static RootElement unit(int rank, int i);

  int rank() const { return static_cast<int>(m.size()); }
  int height() const;
  bool is_zero() const;
  int operator[](int i) const { return m[i]; }

  friend RootElement operator+(const RootElement& a, const RootElement& b);
  friend RootElement operator-(const RootElement& a, const RootElement& b);  // may go negative
  bool nonnegative() const;
  /// componentwise a <= b
  friend bool leq(const RootElement& a, const RootElement& b);

  friend auto operator<=>(const RootElement& a, const RootElement& b) = default;
  std::string str() const;
};

/// All alpha with 0 <= alpha <= bound componentwise, in lexicographic order.
std::vector<RootElement> enumerate_Qplus(const RootElement& bound);

enum class LieKind { A, B, C, D, Custom };

LieKind lie_kind_from_char(char c);
char lie_kind_char(LieKind k);

/// Root-system data for the classical series plus arbitrary symmetric
/// matrices (custom kind, fermionic sums only).
///
/// Normalization: (alpha_i, alpha_i) = 2 d_i with d relatively prime positive
/// integers, so d = 1 for A and D, d = (2,..,2,1) for B, d = (1,..,1,2)
/// for C.  C_{ij} = (alpha_i, alpha_j) / d_i and B = diag(d) C.
struct CartanData {
  LieKind kind = LieKind::A;
  int rank = 0;
  std::vector<std::vector<int>> C;  // Cartan matrix (or the custom symmetric matrix)
  std::vector<int> d;               // symmetrizers
  std::vector<std::vector<int>> B;  // b_ij = (alpha_i, alpha_j)

  // Epsilon-coordinate data for A-D, from the simple-root displays
  // alpha_i = sum_k alpha_in_eps[i][k] eps_k with (eps_j, eps_k) =
  // eps_norm * delta_{jk}.  For A there are rank+1 epsilons.
  std::vector<std::vector<int>> alpha_in_eps;
  Rational eps_norm = 1;
  // eps_i expanded over simple roots (rational); for A these are the
  // trace-adjusted eps_i - eps_{l+1}, matching the convention that the
  // common factor q^{(lambda, eps_{l+1})} is divided out.
  std::vector<std::vector<Rational>> eps_in_alpha;

  int num_eps() const { return static_cast<int>(alpha_in_eps.empty() ? 0 : alpha_in_eps[0].size()); }
  bool is_simply_laced() const;
  bool is_classical() const { return kind != LieKind::Custom; }

  /// (rho, alpha_i) = d_i
  int rho_pairing(int i) const { return d[i]; }
  /// (beta, alpha_i)
  Rational pair_root_alpha(const RootElement& beta, int i) const;
  /// (beta, gamma) under B
  Rational pair_roots(const RootElement& beta, const RootElement& gamma) const;
  /// (beta, eps_k) via the alpha_in_eps table
  Rational pair_root_eps(const RootElement& beta, int k) const;
  /// (q)_beta = prod_i (q_i; q_i)_{m_i}, q_i = q^{d_i}
  LaurentPoly qfact_beta(const RootElement& m) const;
  std::vector<LaurentPoly> qfact_beta_factors(const RootElement& m) const;
};

/// rank >= 1 for A, >= 2 for B and C, >= 3 for D.
CartanData build_cartan(LieKind kind, int rank);
CartanData build_custom(std::vector<std::vector<int>> symmetric_matrix);

/// A weight written over symbolic weights and fundamental weights:
/// sum_s base_symbols[s] * s + sum_i integral_part[i] * omega_i.
struct WeightExpr {
  std::vector<std::pair<std::string, Rational>> base_symbols;  // sorted by name
  std::vector<Rational> integral_part;                         // over omega, size = rank

  static WeightExpr fundamental(int rank, int i, const Rational& c = 1);
  static WeightExpr rho(int rank);
  static WeightExpr symbolic(int rank, const std::string& name);
  static WeightExpr integral(std::vector<Rational> omega_coords);
  static WeightExpr zero(int rank) { return integral(std::vector<Rational>(rank, Rational(0))); }

  bool is_integral() const { return base_symbols.empty(); }
  WeightExpr& operator+=(const WeightExpr& o);
  WeightExpr& operator-=(const WeightExpr& o);
  friend WeightExpr operator+(WeightExpr a, const WeightExpr& b) { return a += b; }
  friend WeightExpr operator-(WeightExpr a, const WeightExpr& b) { return a -= b; }
  WeightExpr scaled(const Rational& c) const;
  /// the weight sum_i m_i alpha_i as a WeightExpr (omega coords from C)
  static WeightExpr from_root(const CartanData& cd, const RootElement& beta);

  bool dominant() const;  // integral part >= 0 (requires is_integral)
  std::string str() const;
};

/// Symbolic pairing value: constant + sum of (weight symbol, alpha_i) atoms.
struct PairingExpr {
  Rational constant = 0;
  // ((symbol name, root index) -> coefficient), sorted
  std::vector<std::pair<std::pair<std::string, int>, Rational>> atoms;

  PairingExpr& operator+=(const PairingExpr& o);
  PairingExpr& operator-=(const PairingExpr& o);
  PairingExpr scaled(const Rational& c) const;
  bool is_constant() const { return atoms.empty(); }
  std::string str() const;
};

/// (x, y) where either side is a WeightExpr or a RootElement; symbolic weights
/// pair only against root elements.
PairingExpr pair(const WeightExpr& x, const RootElement& y, const CartanData& cd);
PairingExpr pair(const WeightExpr& x, const WeightExpr& y, const CartanData& cd);
Rational pair(const RootElement& x, const RootElement& y, const CartanData& cd);

/// Renders q^{sign * expr} as a kernel monomial, mapping the atom
/// (s, alpha_i) through the convention q^{-(s, alpha_i)} = <var>_{i+1} with
/// the variable letter taken from the symbol map (lambda -> z, mu -> u,
/// theta -> w by default).
Monomial render_q_power(const PairingExpr& expr, int sign = 1);

/// Unique dominant Weyl-orbit representative by repeated simple reflections.
WeightExpr dominant_rep(const WeightExpr& nu, const CartanData& cd);

/// Weight membership in the finite-dimensional irreducible L^mu:
/// dominant_rep(nu) <= mu in the dominance order over Q_+.
bool is_weight_of_irrep(const WeightExpr& mu, const WeightExpr& nu, const CartanData& cd);

}  // namespace toda
