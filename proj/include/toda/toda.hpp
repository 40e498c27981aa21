#pragma once

#include "toda/whittaker.hpp"

namespace toda {

/// Truncated formal series in y = (y_1..y_l) with rational-function
/// coefficients, keyed by the exponent vector; total degree <= degree_bound.
struct YSeries {
  int degree_bound = 0;
  std::map<RootElement, RationalFn> coeffs;

  RationalFn coeff(const RootElement& m) const;
  int rank() const;
};

/// One term coeff(q,z) * D^shift * y^y_mult of a difference operator;
/// D_i scales y_i by q, so on the coefficient of y^m the term contributes
/// coeff * q^{shift . m} * [y^{m - y_mult}].
struct OpTerm {
  RationalFn coeff;
  std::vector<int> shift;
  RootElement y_mult;
};

struct DifferenceOperator {
  int rank = 0;
  std::vector<OpTerm> terms;
};

YSeries apply_op(const DifferenceOperator& op, const YSeries& f);

/// F(q, z, y) = sum_beta J^lambda_beta y^beta through total degree D.
YSeries build_F(JContext& ctx, int degree_bound);

/// H_Toda = sum_{i=0..l} D_{i+1} D_i^{-1} (1 - y_i) prod_{j>i} (q^{-1} z_j),
/// with D_0 = D_{l+1} = 1 and y_0 = y_{l+1} = 0, for sl_{l+1}.
DifferenceOperator toda_hamiltonian_A(int l);
RationalFn toda_eigenvalue_A(int l);

/// Coefficientwise H F = eps F through total degree D - 1 (the y_i
/// multipliers raise degree, so the top coefficients are not fully
/// determined by the truncation).  Works on any series, so a perturbed F
/// reports exactly the betas where it breaks.
std::map<RootElement, bool> eigen_residual_by_beta(const YSeries& f, int l);
Report eigen_check_A(JContext& ctx, int degree_bound);

/// Context with lambda rendered in the variables t_k = q^{-(lambda, eps_k)}
/// of the given classical kind (for A the common factor q^{(lambda, eps_{l+1})}
/// is divided out, i.e. t_{l+1} = 1).
JContext make_epsilon_context(LieKind kind, int rank);

/// The per-type Toda recursion relations in epsilon-coordinates for A-D.
Report verify_toda_recursion(JContext& ctx, const RootElement& beta);
Report verify_toda_recursion(LieKind kind, int rank, const RootElement& beta);

/// Appendix checks for type A rank l through degree D:
/// (a) the Toda recursion for the fermionic sums I_m,
/// (b) the symmetry I_{rev m}(q^{-1}, rev z^{-1}) = I_m (qz)^m q^{W_m},
/// (c) F = Lambda G with Lambda = prod 1/(y_i)_inf and G the shifted series.
std::vector<Report> verify_appendixA(int rank, int degree_bound);

}  // namespace toda
