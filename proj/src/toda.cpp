#include "toda/toda.hpp"

#include <chrono>
#include <sstream>

namespace toda {

namespace {

std::vector<RootElement> degree_box(int rank, int bound) {
  std::vector<RootElement> out;
  if (bound < 0) return out;
  for (const auto& m : enumerate_Qplus(RootElement(std::vector<int>(rank, bound))))
    if (m.height() <= bound) out.push_back(m);
  return out;
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RationalFn YSeries::coeff(const RootElement& m) const {
  auto it = coeffs.find(m);
  return it == coeffs.end() ? RationalFn::zero() : it->second;
}

int YSeries::rank() const {
  return coeffs.empty() ? 0 : coeffs.begin()->first.rank();
}

YSeries apply_op(const DifferenceOperator& op, const YSeries& f) {
  YSeries out;
  out.degree_bound = f.degree_bound;
  for (const auto& m : degree_box(op.rank, f.degree_bound)) {
    RationalFn c;
    for (const auto& term : op.terms) {
      RootElement src = m - term.y_mult;
      if (!src.nonnegative()) continue;
      auto it = f.coeffs.find(src);
      if (it == f.coeffs.end() || it->second.is_zero()) continue;
      Rational shift_exp = 0;
      for (int i = 0; i < op.rank; ++i) shift_exp += Rational(term.shift[i]) * m[i];
      c += (term.coeff * it->second).mul_monomial(Monomial::q_pow(shift_exp));
    }
    if (!c.is_zero()) out.coeffs.emplace(m, std::move(c));
  }
  return out;
}

YSeries build_F(JContext& ctx, int degree_bound) {
  YSeries f;
  f.degree_bound = degree_bound;
  for (const auto& beta : degree_box(ctx.rank(), degree_bound)) f.coeffs.emplace(beta, ctx.J(beta));
  return f;
}

namespace {

// prod_{j=i+1}^{l} (q^{-1} z_j) as a monomial in the default z variables
Monomial tail_product(int i, int l) {
  Monomial m = Monomial::one();
  for (int j = i + 1; j <= l; ++j)
    m *= Monomial::q_pow(std::int64_t(-1)) * Monomial::sym("z" + std::to_string(j));
  return m;
}

}  // namespace

DifferenceOperator toda_hamiltonian_A(int l) {
  DifferenceOperator op;
  op.rank = l;
  for (int i = 0; i <= l; ++i) {
    std::vector<int> shift(l, 0);
    if (i + 1 <= l) shift[i] = 1;  // D_{i+1}, 1-based index i+1
    if (i >= 1) shift[i - 1] -= 1;  // D_i^{-1}
    RationalFn c{LaurentPoly(tail_product(i, l))};
    op.terms.push_back({c, shift, RootElement::zero(l)});
    if (i >= 1) {
      RootElement e = RootElement::unit(l, i - 1);
      op.terms.push_back({-c, shift, e});  // the -y_i part of (1 - y_i)
    }
  }
  return op;
}

RationalFn toda_eigenvalue_A(int l) {
  RationalFn eps;
  for (int i = 0; i <= l; ++i) eps += RationalFn{LaurentPoly(tail_product(i, l))};
  return eps;
}

std::map<RootElement, bool> eigen_residual_by_beta(const YSeries& f, int l) {
  DifferenceOperator h = toda_hamiltonian_A(l);
  RationalFn eps = toda_eigenvalue_A(l);
  YSeries hf = apply_op(h, f);
  std::map<RootElement, bool> ok;
  for (const auto& m : degree_box(l, f.degree_bound - 1))
    ok.emplace(m, rf_equal(hf.coeff(m), eps * f.coeff(m)));
  return ok;
}

Report eigen_check_A(JContext& ctx, int degree_bound) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.identity = "toda eigenfunction";
  rep.params = "A" + std::to_string(ctx.rank()) + ", D=" + std::to_string(degree_bound);
  YSeries f = build_F(ctx, degree_bound);
  rep.holds = true;
  for (const auto& [beta, ok] : eigen_residual_by_beta(f, ctx.rank()))
    if (!ok) rep.holds = false;
  rep.runtime_ms = ms_since(t0);
  return rep;
}

JContext make_epsilon_context(LieKind kind, int rank) {
  CartanData cd = build_cartan(kind, rank);
  const int l = rank;
  int nt = kind == LieKind::A ? l : cd.num_eps();
  std::vector<Monomial> images(l, Monomial::one());
  for (int i = 0; i < l; ++i)
    for (int k = 0; k < nt; ++k)
      images[i] *= Monomial::sym("t" + std::to_string(k + 1), cd.alpha_in_eps[i][k]);
  return JContext(std::move(cd), std::move(images));
}

Report verify_toda_recursion(LieKind kind, int rank, const RootElement& beta) {
  JContext ctx = make_epsilon_context(kind, rank);
  return verify_toda_recursion(ctx, beta);
}

Report verify_toda_recursion(JContext& ctx, const RootElement& beta) {
  auto t0 = std::chrono::steady_clock::now();
  const CartanData& cd = ctx.cartan();
  const LieKind kind = cd.kind;
  const int l = cd.rank;
  const int nt = kind == LieKind::A ? l : cd.num_eps();
  ShiftedWeight lam = ShiftedWeight::lambda(cd);

  auto t_inv = [&](int k) {  // q^{(lambda, eps_k)} = t_k^{-1}; 0-based k
    return k < nt ? Monomial::sym("t" + std::to_string(k + 1), -1) : Monomial::one();
  };
  auto t_fwd = [&](int k) { return k < nt ? Monomial::sym("t" + std::to_string(k + 1)) : Monomial::one(); };
  auto qp = [&](const Rational& e) { return Monomial::q_pow(e); };
  auto half = [](int a, int b) { return make_rational(a, b); };

  // The B_l display is printed in the (eps, eps) = 1 normalization, where
  // the short root has half the integral length: all pairings are halved and
  // J is the recursion solution at base q^{1/2}.  A, C, D displays already
  // sit in the integral-d normalization.
  const Rational scale = kind == LieKind::B ? half(1, 2) : Rational(1);
  auto eps_pair = [&](const RootElement& g, int k) -> Rational {
    return cd.pair_root_eps(g, k) * scale;
  };
  RationalFn jb = ctx.J(beta, lam);
  if (scale != 1) jb = jb.scale_q_exponents(scale);
  auto jm = [&](const RootElement& g) {
    RationalFn j = ctx.J(g, lam);
    return scale == 1 ? j : j.scale_q_exponents(scale);
  };

  RationalFn lhs, rhs;
  if (kind == LieKind::A) {
    for (int i = 0; i < l + 1; ++i) {
      Rational be = eps_pair(beta, i);
      LaurentPoly factor = LaurentPoly(qp(-be)) - LaurentPoly::one();
      lhs += (jb * RationalFn(factor)).mul_monomial(t_inv(i) * qp(-(i + 1)));
    }
    for (int i = 0; i < l; ++i) {
      Rational be = eps_pair(beta, i);
      rhs += jm(beta - RootElement::unit(l, i)).mul_monomial(t_inv(i) * qp(-be) * qp(-(i + 1)));
    }
  } else if (kind == LieKind::B || kind == LieKind::C || kind == LieKind::D) {
    // exponent offsets of the three displays: B has +-(l - i + 1/2), C has
    // +-(l - i + 1), D has +-(l - i), with i 1-based
    Rational off;
    for (int i = 0; i < l; ++i) {
      int i1 = i + 1;
      if (kind == LieKind::B) off = Rational(l - i1) + half(1, 2);
      if (kind == LieKind::C) off = Rational(l - i1 + 1);
      if (kind == LieKind::D) off = Rational(l - i1);
      Rational be = eps_pair(beta, i);
      RationalFn t1 = RationalFn(LaurentPoly(qp(-be)) - LaurentPoly::one()).mul_monomial(t_inv(i) * qp(off));
      RationalFn t2 = RationalFn(LaurentPoly(qp(be)) - LaurentPoly::one()).mul_monomial(t_fwd(i) * qp(-off));
      lhs += (t1 + t2) * jb;
    }
    for (int i = 0; i + 1 < l; ++i) {
      int i1 = i + 1;
      Rational bei = eps_pair(beta, i);
      Rational bei1 = eps_pair(beta, i + 1);
      Monomial first, second;
      if (kind == LieKind::B) {
        first = t_inv(i) * qp(-bei + Rational(l - i1) + half(1, 2));
        second = t_fwd(i + 1) * qp(bei1 - Rational(l) + Rational(i1) + half(1, 2));
      } else if (kind == LieKind::C) {
        first = t_inv(i) * qp(-bei + Rational(l - i1 + 1));
        second = t_fwd(i + 1) * qp(bei1 - Rational(l) + Rational(i1));
      } else {
        first = t_inv(i) * qp(-bei + Rational(l - i1));
        second = t_fwd(i + 1) * qp(bei1 - Rational(l) + Rational(i1) + 1);
      }
      RationalFn j = jm(beta - RootElement::unit(l, i));
      rhs += j.mul_monomial(first) + j.mul_monomial(second);
    }
    RootElement el = RootElement::unit(l, l - 1);
    Rational bel = eps_pair(beta, l - 1);
    if (kind == LieKind::B) {
      LaurentPoly pre = LaurentPoly(Monomial::q_pow(half(1, 2))) + LaurentPoly::one();
      LaurentPoly inner = LaurentPoly(t_inv(l - 1) * qp(-bel + half(1, 2))) +
                          LaurentPoly(Monomial::q_pow(half(-1, 2)));
      rhs += jm(beta - el) * RationalFn(pre * inner);
      // The vector representation of so(2l+1) has a three-step short-root
      // string through the zero weight, so the double short-root step
      // survives the trace and contributes one more term, parallel to the
      // extra D_l term below.  Required: the relation fails at
      // beta = 2 alpha_l without it.
      rhs -= jm(beta - el - el).mul_monomial(t_inv(l - 1) * qp(-bel + 1));
    } else if (kind == LieKind::C) {
      rhs += jm(beta - el).mul_monomial(t_inv(l - 1) * qp(-bel + 1));
    } else {
      Rational bel1 = eps_pair(beta, l - 2);
      Monomial a = t_inv(l - 2) * qp(-bel1 + 1);
      Monomial b = t_inv(l - 1) * qp(-bel);
      rhs += jm(beta - el).mul_monomial(a) + jm(beta - el).mul_monomial(b);
      rhs -= jm(beta - el - RootElement::unit(l, l - 2)).mul_monomial(a);
    }
  } else {
    throw std::invalid_argument("toda recursion needs a classical kind");
  }

  Report rep;
  rep.identity = "toda recursion";
  rep.params = std::string(1, lie_kind_char(kind)) + std::to_string(l) + ", beta=" + beta.str();
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = rf_equal(lhs, rhs);
  rep.runtime_ms = ms_since(t0);
  return rep;
}

std::vector<Report> verify_appendixA(int rank, int degree_bound) {
  auto t0 = std::chrono::steady_clock::now();
  const int l = rank;
  CartanData cd = build_cartan(LieKind::A, l);
  Fermionic fer(QuadForm::bare(cd.C));
  std::vector<Report> out;

  auto box = degree_box(l, degree_bound);

  {  // (a) the Toda recursion for I_m
    Report rep;
    rep.identity = "appendixA toda recursion";
    rep.params = "A" + std::to_string(l) + ", D=" + std::to_string(degree_bound);
    rep.holds = true;
    for (const auto& m : box) {
      auto mi = [&](int i) { return (i >= 1 && i <= l) ? m[i - 1] : 0; };  // 1-based, m_0 = m_{l+1} = 0
      RationalFn lhs, rhs;
      for (int i = 0; i <= l; ++i) {
        LaurentPoly factor =
            LaurentPoly(Monomial::q_pow(std::int64_t(mi(i + 1) - mi(i)))) - LaurentPoly::one();
        lhs += RationalFn(factor * LaurentPoly(tail_product(i, l)));
      }
      lhs *= fer.I_base(m);
      for (int i = 1; i <= l; ++i) {
        RootElement down = m - RootElement::unit(l, i - 1);
        if (!down.nonnegative()) continue;
        Monomial c = Monomial::q_pow(std::int64_t(mi(i + 1) - mi(i))) * tail_product(i, l);
        rhs += fer.I_base(down).mul_monomial(c);
      }
      if (!rf_equal(lhs, rhs)) {
        rep.holds = false;
        rep.lhs = lhs;
        rep.rhs = rhs;
      }
    }
    rep.runtime_ms = ms_since(t0);
    out.push_back(rep);
  }

  {  // (b) the q -> 1/q symmetry with reversed colors
    auto tb = std::chrono::steady_clock::now();
    Report rep;
    rep.identity = "appendixA symmetry";
    rep.params = "A" + std::to_string(l) + ", D=" + std::to_string(degree_bound);
    rep.holds = true;
    for (const auto& m : box) {
      RootElement rev(std::vector<int>(m.m.rbegin(), m.m.rend()));
      SubstMap reverse_invert;
      for (int i = 0; i < l; ++i)
        reverse_invert.emplace(fer.zsym(i), SubstImage::to(fer.zmon(l - 1 - i).inverse()));
      RationalFn lhs = fer.I_base(rev).substitute(reverse_invert).invert_q();
      Monomial pref = Monomial::q_pow(fer.form().W(m));
      for (int i = 0; i < l; ++i)
        pref *= (Monomial::q_pow(std::int64_t(1)) * fer.zmon(i)).pow(m[i]);
      RationalFn rhs = fer.I_base(m).mul_monomial(pref);
      if (!rf_equal(lhs, rhs)) {
        rep.holds = false;
        rep.lhs = lhs;
        rep.rhs = rhs;
      }
    }
    rep.runtime_ms = ms_since(tb);
    out.push_back(rep);
  }

  {  // (c) F = Lambda G coefficientwise
    auto tc = std::chrono::steady_clock::now();
    Report rep;
    rep.identity = "appendixA lambda equivalence";
    rep.params = "A" + std::to_string(l) + ", D=" + std::to_string(degree_bound);
    rep.holds = true;
    for (const auto& m : box) {
      RationalFn rhs;
      for (const auto& a : enumerate_Qplus(m)) {
        std::vector<LaurentPoly> poch;
        for (int i = 0; i < l; ++i) {
          auto fi = qd_pochhammer_factors(1, a[i]);
          poch.insert(poch.end(), fi.begin(), fi.end());
        }
        RootElement rest = m - a;
        rhs += RationalFn::reciprocal(std::move(poch)) *
               fer.I_base(rest).mul_monomial(fer.zW_power(rest));
      }
      if (!rf_equal(fer.I_base(m), rhs)) {
        rep.holds = false;
        rep.lhs = fer.I_base(m);
        rep.rhs = rhs;
      }
    }
    rep.runtime_ms = ms_since(tc);
    out.push_back(rep);
  }
  return out;
}

}  // namespace toda
