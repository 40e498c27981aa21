#pragma once

#include <shared_mutex>

#include "toda/fermionic.hpp"
#include "toda/lie.hpp"
#include "toda/report.hpp"

namespace toda {

/// A weight of the form lam*LAMBDA + mu*MU + theta*THETA + chi, where the
/// capitalized parts are free symbolic weights (rendered through the
/// variable families z_i, u_i, w_i) and chi is an explicit weight known
/// through its pairings (chi, alpha_i).
struct ShiftedWeight {
  int lam = 0, mu = 0, theta = 0;
  std::vector<Rational> shift;  // (chi, alpha_i)

  static ShiftedWeight zero(const CartanData& cd) { return {0, 0, 0, std::vector<Rational>(cd.rank, 0)}; }
  static ShiftedWeight lambda(const CartanData& cd);
  static ShiftedWeight mu_weight(const CartanData& cd);
  static ShiftedWeight theta_weight(const CartanData& cd);

  ShiftedWeight operator-() const;
  ShiftedWeight& add_root(const CartanData& cd, const RootElement& beta, const Rational& c = 1);
  ShiftedWeight& add_rho(const CartanData& cd, const Rational& c = 1);
  /// explicit integral weight over omega coordinates
  ShiftedWeight& add_weight(const CartanData& cd, const WeightExpr& w, const Rational& c = 1);

  friend bool operator==(const ShiftedWeight& a, const ShiftedWeight& b) = default;
};

/// Evaluation context for the Whittaker scalar products J^lambda_beta and
/// the pairings X^{lambda1,lambda2}_beta.  lambda enters only through the
/// monomials q^{-(lambda, alpha_i)}; by default these are the symbols z_i
/// (and u_i, w_i for the second and third free weight), but the images are
/// configurable so verifiers can work in finer variable lattices.
class JContext {
 public:
  explicit JContext(CartanData cd);
  JContext(CartanData cd, std::vector<Monomial> lambda_images);

  const CartanData& cartan() const { return cd_; }
  int rank() const { return cd_.rank; }
  Monomial lambda_image(int i) const { return lam_mono_[i]; }

  /// q^{-(w, gamma)} for gamma given by simple-root multiplicities.
  Monomial weight_monomial(const ShiftedWeight& w, const std::vector<long>& gamma) const;
  Monomial weight_monomial(const ShiftedWeight& w, const RootElement& gamma) const;
  /// q^{(beta,beta)/2 - (w + rho, beta)}; the leading monomial of the recursion.
  Monomial lead_monomial(const ShiftedWeight& w, const RootElement& beta) const;

  /// J^w_beta by the defining recursion; J_0 = 1, zero off Q_+.
  /// Throws PoleError when a leading factor degenerates to 1 - q^0.
  RationalFn J(const RootElement& beta, const ShiftedWeight& w);
  RationalFn J(const RootElement& beta) { return J(beta, ShiftedWeight::lambda(cd_)); }

  /// Interval sums J^w_beta[r, s]; finite intervals sum over slotwise
  /// decompositions of beta, [r, inf) reduces to J by the shift property.
  RationalFn J_interval(const RootElement& beta, const ShiftedWeight& w, const Interval& iv);

  /// X^{l1,l2}_beta = sum_{alpha <= beta} J^{l1}_{beta-alpha} J^{l2}_alpha
  /// q^{(alpha,alpha)/2 - (alpha, l2 + rho)}.
  RationalFn X_pair(const RootElement& beta, const ShiftedWeight& l1, const ShiftedWeight& l2);

  /// Substitutes v -> v^{-1} for every family variable actually in use,
  /// composing with invert_q; the variable convention of the q -> 1/q
  /// symmetries.
  RationalFn invert_q_and_vars(const RationalFn& f) const;
  /// Substitutes all lambda-family variables by zero (regular limit).
  RationalFn lambda_to_zero(const RationalFn& f) const;

 private:
  struct Key {
    int lam, mu, theta;
    std::vector<Rational> shift;
    RootElement beta;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  CartanData cd_;
  QuadForm form_;
  std::vector<Monomial> lam_mono_, mu_mono_, th_mono_;
  std::map<Key, RationalFn> cache_;
  mutable std::shared_mutex cache_mu_;
};

/// Named identity checks: id1..id4, kminus1, k0, J0k, Xsym, Xqinv, Jqinv,
/// Jz0.  k is the interval length for J0k.  A false identity is a report.
Report verify_identity(JContext& ctx, const std::string& which, const RootElement& beta, long k = 0);

struct VanishingReport {
  std::string params;
  bool hypotheses_ok = false;
  bool predicted_zero = false;
  bool observed_zero = false;
  bool pole_at_specialization = false;  // only possible on the unconstrained side
  bool holds = false;  // prediction respected (vacuously true when no constraint)
  RationalFn value;
  double runtime_ms = 0;
};

/// Specializes X^{lambda1,lambda2}_beta at explicit integral weights
/// (cancellation first, then z_i -> explicit q-powers) and compares the
/// outcome with the weight-space prediction.
VanishingReport check_vanishing(JContext& ctx, const RootElement& beta, const WeightExpr& lam1,
                                const WeightExpr& lam2);

}  // namespace toda
