#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "toda/whittaker.hpp"

using namespace toda;

TEST_CASE("J base cases") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  CHECK(ctx.J(RootElement({0})).is_one());
  RationalFn j1 = ctx.J(RootElement({1}));
  RationalFn expect = RationalFn::reciprocal({LaurentPoly::one_minus(Monomial::q_pow(std::int64_t(1))),
                                              LaurentPoly::one_minus(Monomial::sym("z1"))});
  CHECK(rf_equal(j1, expect));
}

TEST_CASE("J coincides with the simply-laced fermionic sum") {
  for (auto [kind, rank, h] : std::vector<std::tuple<LieKind, int, int>>{
           {LieKind::A, 1, 4}, {LieKind::A, 2, 4}, {LieKind::A, 3, 3}, {LieKind::D, 4, 3}}) {
    CartanData cd = build_cartan(kind, rank);
    JContext ctx(cd);
    Fermionic fer(QuadForm::bare(cd.C));
    RootElement top(std::vector<int>(rank, h));
    for (const auto& beta : enumerate_Qplus(top)) {
      if (beta.height() > h) continue;
      CHECK(rf_equal(ctx.J(beta), fer.I_base(beta)));
    }
  }
}

TEST_CASE("J recursion residual vanishes on re-substitution") {
  std::vector<CartanData> cds = {build_cartan(LieKind::A, 2), build_cartan(LieKind::A, 3),
                                 build_cartan(LieKind::B, 2), build_cartan(LieKind::C, 2),
                                 build_cartan(LieKind::D, 3)};
  for (auto& cd : cds) {
    JContext ctx(cd);
    ShiftedWeight lam = ShiftedWeight::lambda(cd);
    RootElement top(std::vector<int>(cd.rank, 3));
    for (const auto& beta : enumerate_Qplus(top)) {
      if (beta.height() > 3) continue;
      RationalFn rhs;
      for (const auto& g : enumerate_Qplus(beta)) {
        RationalFn term = RationalFn::reciprocal(cd.qfact_beta_factors(beta - g));
        rhs += term.mul_monomial(ctx.lead_monomial(lam, g)) * ctx.J(g, lam);
      }
      CHECK(rf_equal(ctx.J(beta, lam), rhs));
    }
  }
}

TEST_CASE("interval sums") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  ShiftedWeight lam = ShiftedWeight::lambda(a1);
  RootElement b({1});
  // [0,0] and [1,1]
  RationalFn j00 = ctx.J_interval(b, lam, Interval::finite(0, 0));
  CHECK(rf_equal(j00, RationalFn::reciprocal(a1.qfact_beta_factors(b))));
  RationalFn j11 = ctx.J_interval(b, lam, Interval::finite(1, 1));
  CHECK(rf_equal(j11, j00.mul_monomial(ctx.lead_monomial(lam, b))));
  // [0,1] via the two decompositions, and the gluing property at u = 0
  RationalFn j01 = ctx.J_interval(b, lam, Interval::finite(0, 1));
  RationalFn glued;
  for (const auto& g : enumerate_Qplus(b)) {
    ShiftedWeight lshift = lam;
    lshift.add_root(a1, g, -1);  // lambda - gamma
    glued += ctx.J_interval(b - g, lshift, Interval::finite(0, 0)) *
             ctx.J_interval(g, lam, Interval::finite(1, 1));
  }
  CHECK(rf_equal(j01, glued));
  // semi-infinite [0, inf) equals J
  CHECK(rf_equal(ctx.J_interval(b, lam, Interval::from(0)), ctx.J(b, lam)));
}

TEST_CASE("gluing property on A2") {
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext ctx(a2);
  ShiftedWeight lam = ShiftedWeight::lambda(a2);
  RootElement beta({1, 1});
  for (long u = 0; u < 2; ++u) {
    RationalFn lhs = ctx.J_interval(beta, lam, Interval::finite(0, 2));
    RationalFn rhs;
    for (const auto& g : enumerate_Qplus(beta)) {
      ShiftedWeight lshift = lam;
      lshift.add_root(a2, g, -1);
      rhs += ctx.J_interval(beta - g, lshift, Interval::finite(0, u)) *
             ctx.J_interval(g, lam, Interval::finite(u + 1, 2));
    }
    CHECK(rf_equal(lhs, rhs));
  }
}

TEST_CASE("X_pair basics and the corner dictionary") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  CHECK(ctx.X_pair(RootElement({0}), ShiftedWeight::lambda(a1), ShiftedWeight::mu_weight(a1)).is_one());

  // X^{lambda - nubar, beta - lambda - 2rho}_beta = X^{(0,nu)}_{C,m}(q,z)
  // with u_i standing for q^{nu_i} (nubar = -mu)
  Fermionic fer(QuadForm::bare(a1.C));
  for (int m = 1; m <= 2; ++m) {
    RootElement beta({m});
    ShiftedWeight l1 = ShiftedWeight::lambda(a1);
    l1.mu = 1;  // lambda + mu = lambda - nubar
    ShiftedWeight l2 = -ShiftedWeight::lambda(a1);
    l2.add_root(a1, beta).add_rho(a1, -2);
    RationalFn lhs = ctx.X_pair(beta, l1, l2);
    RationalFn x = fer.X_corner(0, {LinExp::symbolic("nu")}, beta);
    SubstMap dict;
    dict.emplace(symbol("nu"), SubstImage::to(Monomial::sym("u1")));
    CHECK(rf_equal(lhs, x.substitute(dict)));
  }
}

TEST_CASE("id1 corresponds to the fermionic J = JX recursion") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  Fermionic fer(QuadForm::bare(a1.C));
  RootElement beta({1});
  // dictionary: fermionic z -> u (the mu of id1), q^nu -> u^{-1} z
  SubstMap dict;
  dict.emplace(symbol("z1"), SubstImage::to(Monomial::sym("u1")));
  dict.emplace(symbol("nu"), SubstImage::to(Monomial::sym("u1", -1) * Monomial::sym("z1")));
  SubstMap nu_shift;
  nu_shift.emplace(symbol("z1"), SubstImage::to(Monomial::sym("nu") * Monomial::sym("z1")));

  RationalFn lhsF = fer.I_base(beta).substitute(nu_shift).substitute(dict);
  CHECK(rf_equal(lhsF, ctx.J(beta)));
  for (int a = 0; a <= 1; ++a) {
    RootElement ra({a});
    ShiftedWeight l2 = -ShiftedWeight::mu_weight(a1);
    l2.add_root(a1, ra).add_rho(a1, -2);
    RationalFn xj = ctx.X_pair(ra, ShiftedWeight::lambda(a1), l2);
    RationalFn xf = fer.X_corner(0, {LinExp::symbolic("nu")}, ra).substitute(dict);
    CHECK(rf_equal(xj, xf));
  }
  CHECK(verify_identity(ctx, "id1", beta).holds);
}

TEST_CASE("identities id1-id4 on A1") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  // id2 first: it pins the sign conventions of the bar-ed pairing
  for (int m = 1; m <= 3; ++m) {
    RootElement beta({m});
    CHECK(verify_identity(ctx, "id2", beta).holds);
    CHECK(verify_identity(ctx, "id1", beta).holds);
    CHECK(verify_identity(ctx, "id3", beta).holds);
    CHECK(verify_identity(ctx, "id4", beta).holds);
  }
}

TEST_CASE("identities id1-id4 on A2, small heights") {
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext ctx(a2);
  for (const auto& beta : enumerate_Qplus(RootElement({1, 1}))) {
    for (const char* id : {"id1", "id2", "id3", "id4"}) {
      Report r = verify_identity(ctx, id, beta);
      CHECK_MESSAGE(r.holds, r.identity, " ", r.params);
    }
  }
}

TEST_CASE("k = -1 and k = 0 sums") {
  for (auto [kind, rank] : std::vector<std::pair<LieKind, int>>{
           {LieKind::A, 1}, {LieKind::A, 2}, {LieKind::B, 2}}) {
    CartanData cd = build_cartan(kind, rank);
    JContext ctx(cd);
    RootElement top(std::vector<int>(rank, 2));
    for (const auto& beta : enumerate_Qplus(top)) {
      if (beta.height() > 3) continue;
      CHECK(verify_identity(ctx, "kminus1", beta).holds);
      Report r = verify_identity(ctx, "k0", beta);
      if (cd.is_simply_laced()) {
        CHECK(r.asserted);
        CHECK(r.holds);
      } else {
        CHECK(!r.asserted);  // recorded only; the value is still computed
      }
    }
  }
}

TEST_CASE("J[0,k] identity") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext c1(a1);
  for (int m = 1; m <= 3; ++m)
    for (long k = 0; k <= 3; ++k) CHECK(verify_identity(c1, "J0k", RootElement({m}), k).holds);
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext c2(a2);
  for (long k = 0; k <= 2; ++k) CHECK(verify_identity(c2, "J0k", RootElement({1, 1}), k).holds);
}

TEST_CASE("X symmetry and q -> 1/q") {
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext ctx(a2);
  for (const auto& beta : enumerate_Qplus(RootElement({1, 1}))) {
    CHECK(verify_identity(ctx, "Xsym", beta).holds);
    CHECK(verify_identity(ctx, "Xqinv", beta).holds);
  }
  // another ADE instance at rank 3
  CartanData a3 = build_cartan(LieKind::A, 3);
  JContext ctx3(a3);
  CHECK(verify_identity(ctx3, "Xsym", RootElement({1, 1, 1})).holds);
  CHECK(verify_identity(ctx3, "Xqinv", RootElement({1, 0, 1})).holds);
  // B2: the symmetry is conjectural for non-ADE; evaluate and record
  CartanData b2 = build_cartan(LieKind::B, 2);
  JContext bctx(b2);
  Report r = verify_identity(bctx, "Xsym", RootElement({1, 1}));
  CHECK(!r.asserted);
  MESSAGE("B2 Xsym observed holds = ", r.holds);
  CHECK(verify_identity(bctx, "Xqinv", RootElement({1, 1})).holds);
}

TEST_CASE("Jz0 and Jqinv, including non-simply-laced") {
  for (auto [kind, rank] : std::vector<std::pair<LieKind, int>>{
           {LieKind::A, 1}, {LieKind::A, 2}, {LieKind::B, 2}, {LieKind::C, 2}}) {
    CartanData cd = build_cartan(kind, rank);
    JContext ctx(cd);
    RootElement top(std::vector<int>(rank, 2));
    for (const auto& beta : enumerate_Qplus(top)) {
      if (beta.height() > 3) continue;
      CHECK(verify_identity(ctx, "Jz0", beta).holds);
      CHECK(verify_identity(ctx, "Jqinv", beta).holds);
    }
  }
}

TEST_CASE("leading monomials of the q -> 1/q normalization are distinct") {
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext ctx(a2);
  ShiftedWeight lam = ShiftedWeight::lambda(a2);
  std::set<Monomial> leads;
  for (const auto& beta : enumerate_Qplus(RootElement({2, 2}))) {
    Monomial m = Monomial::q_pow(a2.pair_roots(beta, beta) / 2) * ctx.weight_monomial(lam, beta);
    CHECK(leads.insert(m).second);
  }
}

TEST_CASE("vanishing: the sl2 family") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  WeightExpr rho = WeightExpr::rho(1);
  for (int n = 0; n <= 2; ++n) {
    for (int m = 1; m <= 4; ++m) {
      RootElement beta({m});
      WeightExpr beta_wt = WeightExpr::from_root(a1, beta);
      WeightExpr lam2 = beta_wt;                                  // lam2 - beta = 0 in P_+
      WeightExpr nubar = WeightExpr::integral({Rational(n)});
      WeightExpr lam1 = beta_wt - rho.scaled(2) - lam2 - nubar;   // so that -l1-l2-2rho+beta = nubar
      VanishingReport r = check_vanishing(ctx, beta, lam1, lam2);
      CHECK(r.hypotheses_ok);
      CHECK(r.predicted_zero == (m > n));
      CHECK(r.holds);
      if (m > n) CHECK(r.observed_zero);
      if (m <= n) CHECK(!r.observed_zero);  // the q-binomial is nonzero there
    }
  }
}

TEST_CASE("vanishing: brute-forced A2 instances") {
  CartanData a2 = build_cartan(LieKind::A, 2);
  JContext ctx(a2);
  WeightExpr two_rho = WeightExpr::rho(2).scaled(2);
  int found = 0, zero_cases = 0;
  for (const auto& beta : enumerate_Qplus(RootElement({2, 2}))) {
    if (beta.is_zero() || beta.height() > 3) continue;
    WeightExpr beta_wt = WeightExpr::from_root(a2, beta);
    for (int n1 = 0; n1 <= 1; ++n1)
      for (int n2 = 0; n2 <= 1; ++n2) {
        WeightExpr nubar = WeightExpr::integral({Rational(n1), Rational(n2)});
        WeightExpr lam2 = beta_wt;
        WeightExpr lam1 = beta_wt - two_rho - lam2 - nubar;
        VanishingReport r = check_vanishing(ctx, beta, lam1, lam2);
        REQUIRE(r.hypotheses_ok);
        CHECK(r.holds);
        ++found;
        if (r.predicted_zero) {
          CHECK(r.observed_zero);
          ++zero_cases;
        }
      }
  }
  CHECK(found > 0);
  CHECK(zero_cases > 0);  // the search must actually exercise the vanishing side
}

TEST_CASE("pole error on degenerate specialization") {
  CartanData a1 = build_cartan(LieKind::A, 1);
  JContext ctx(a1);
  // J at an explicit weight with (beta,beta)/2 - (lam + rho, beta) = 0:
  // lambda = 0 makes the leading factor 1 - q^{m^2 - m} vanish at m = 1.
  ShiftedWeight w = ShiftedWeight::zero(a1);
  CHECK_THROWS_AS(ctx.J(RootElement({1}), w), PoleError);
}
