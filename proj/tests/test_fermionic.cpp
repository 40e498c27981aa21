#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toda/fermionic.hpp"

using namespace toda;

namespace {

Monomial q(long e = 1) { return Monomial::q_pow(std::int64_t(e)); }

Fermionic sl2() { return Fermionic(QuadForm::bare({{2}})); }

RationalFn closed_I_sl2(Fermionic& f, int m) {
  auto fs = qd_pochhammer_factors(1, m);
  auto zf = pochhammer_factors(f.zmon(0), m);
  fs.insert(fs.end(), zf.begin(), zf.end());
  return RationalFn::reciprocal(std::move(fs));
}

}  // namespace

TEST_CASE("enum_configs counts and order") {
  auto cs = enum_configs(RootElement({1}), 0, 2);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].counts[0] == std::vector<int>{1, 0, 0});
  CHECK(cs[2].counts[0] == std::vector<int>{0, 0, 1});
  CHECK(enum_configs(RootElement({2}), 0, 1).size() == 3);
  CHECK(enum_configs(RootElement({0, 0}), 0, 3).size() == 1);
  // count = prod binom(m_i + s - r, s - r)
  CHECK(enum_configs(RootElement({2, 1}), 0, 2).size() == 6 * 3);
}

TEST_CASE("W and Q values") {
  QuadForm f = QuadForm::bare({{2}});
  CHECK(f.W(RootElement({1})) == 0);
  CHECK(f.W(RootElement({2})) == 2);
  // single particle at weight t has Q = 0 for C = 2
  for (long t = 0; t <= 3; ++t) {
    Configuration c;
    c.lo = t;
    c.counts = {{1}};
    CHECK(quadratic_Q(f, c) == 0);
  }
}

TEST_CASE("Q equals its p-coordinate form on random configurations") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-2, 4), rankd(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    int l = rankd(rng);
    std::vector<std::vector<int>> C(l, std::vector<int>(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j <= i; ++j) C[i][j] = C[j][i] = entry(rng);
    QuadForm form = QuadForm::bare(C);
    std::uniform_int_distribution<int> cnt(0, 4);
    RootElement m(std::vector<int>(l, 0));
    for (int i = 0; i < l; ++i) m.m[i] = cnt(rng) % 3;
    if (m.height() > 4) continue;
    for (const auto& c : enum_configs(m, 0, 5))
      CHECK(quadratic_Q(form, c) == quadratic_Q_pcoords(form, c));
  }
}

TEST_CASE("I on finite intervals") {
  Fermionic f = sl2();
  // l=1, m=1, [0,2]: (1 + z + z^2)/(1 - q)
  RationalFn lhs = f.I(RootElement({1}), Interval::finite(0, 2));
  LaurentPoly num = LaurentPoly::one() + LaurentPoly(f.zmon(0)) + LaurentPoly(f.zmon(0).pow(2));
  RationalFn expect(num, {LaurentPoly::one_minus(q())});
  CHECK(rf_equal(lhs, expect));
  // m=0 on anything is 1
  CHECK(f.I(RootElement({0}), Interval::finite(2, 5)).is_one());
  // empty interval
  CHECK(f.I(RootElement({0}), Interval::finite(3, 2)).is_one());
  CHECK(f.I(RootElement({1}), Interval::finite(3, 2)).is_zero());
}

TEST_CASE("I_base closed form for sl2") {
  Fermionic f = sl2();
  RationalFn i1 = f.I_base(RootElement({1}));
  RationalFn expect =
      RationalFn::reciprocal({LaurentPoly::one_minus(q()), LaurentPoly::one_minus(f.zmon(0))});
  CHECK(rf_equal(i1, expect));
  for (int m = 0; m <= 4; ++m) CHECK(rf_equal(f.I_base(RootElement({m})), closed_I_sl2(f, m)));
}

TEST_CASE("truncation consistency: [0,T] matches the z-expansion of [0,inf)") {
  // as rational functions: I(q,z|0,T) and I(q,z|0,inf) agree as z-series
  // through total degree T; check coefficientwise via finite differencing in
  // the denominator-free cross-multiplied form.  Simpler: (z)_{T+1}-weighted
  // tail comparison is awkward, so compare the explicit finite sum against
  // the quasi-classically exact expansion: I[0,T] - I[0,inf) must have
  // z-valuation > T once brought over the common denominator.
  Fermionic f = sl2();
  for (int m = 1; m <= 4; ++m) {
    for (long T = 0; T <= 6; ++T) {
      RationalFn diff = f.I(RootElement({m}), Interval::finite(0, T)) - f.I_base(RootElement({m}));
      if (diff.is_zero()) continue;
      // valuation of the numerator minus denominator valuation in z
      SymbolId z = f.zsym(0);
      std::int32_t v = diff.num().valuation(z);
      for (const auto& g : diff.den_factors()) v -= g.valuation(z);
      CHECK(v > T);
    }
  }
}

TEST_CASE("shift law: I_{mu + t nu + kappa} = q^{kappa m} I_mu(q, q^nu z)") {
  // symbolic nu, kappa; finite intervals; all m <= (2,2)
  Fermionic f(QuadForm::bare({{2, -1}, {-1, 2}}));
  AngleVec nu{LinExp::symbolic("nu1"), LinExp::symbolic("nu2")};
  AngleVec kap{LinExp::symbolic("kap1"), LinExp::symbolic("kap2")};
  CornerProfile base = CornerProfile::single(1, {LinExp(1), LinExp(-1)});
  for (const auto& m : enumerate_Qplus(RootElement({2, 2}))) {
    long lo = 0, hi = 3;
    auto mu_shifted = [&](int i, long t) {
      return base.at(i, t).q_power(1) * nu[i].q_power(t) * kap[i].q_power(1);
    };
    RationalFn lhs = f.I_explicit(mu_shifted, m, lo, hi);
    RationalFn base_eval = f.I_explicit([&](int i, long t) { return base.at(i, t).q_power(1); }, m, lo, hi);
    SubstMap im;
    for (int i = 0; i < 2; ++i) im.emplace(f.zsym(i), SubstImage::to(nu[i].q_power(1) * f.zmon(i)));
    Monomial pref = kap[0].q_power(m[0]) * kap[1].q_power(m[1]);
    RationalFn rhs = base_eval.substitute(im).mul_monomial(pref);
    CHECK(rf_equal(lhs, rhs));
  }
}

TEST_CASE("interval shift law for mu = 0") {
  Fermionic f(QuadForm::bare({{2, -1}, {-1, 2}}));
  for (const auto& m : enumerate_Qplus(RootElement({2, 1}))) {
    RationalFn a = f.I(m, Interval::finite(1, 4));
    RationalFn b = f.I(m, Interval::finite(0, 3)).mul_monomial(f.zW_power(m, 1));
    CHECK(rf_equal(a, b));
    // and on semi-infinite intervals, relation (J1)
    RationalFn c = f.I(m, Interval::from(2));
    RationalFn d = f.I_base(m).mul_monomial(f.zW_power(m, 2));
    CHECK(rf_equal(c, d));
  }
}

TEST_CASE("fermionic recursion holds after re-substitution") {
  std::vector<QuadForm> forms = {QuadForm::bare({{2}}), QuadForm::bare({{2, -1}, {-1, 2}}),
                                 QuadForm::bare({{3, 1}, {1, 2}})};
  for (auto& form : forms) {
    Fermionic f(form);
    RootElement top(std::vector<int>(form.rank, 3));
    for (const auto& m : enumerate_Qplus(top)) {
      if (m.height() > 4) continue;
      RationalFn rhs;
      for (const auto& a : enumerate_Qplus(m)) {
        std::vector<LaurentPoly> poch;
        RootElement diff = m - a;
        for (int i = 0; i < form.rank; ++i) {
          auto fi = qd_pochhammer_factors(form.poch_d[i], diff[i]);
          poch.insert(poch.end(), fi.begin(), fi.end());
        }
        rhs += RationalFn::reciprocal(std::move(poch)).mul_monomial(f.zW_power(a)) * f.I_base(a);
      }
      CHECK(rf_equal(f.I_base(m), rhs));
    }
  }
}

TEST_CASE("corner sums: relations 1-3 of the mutual-relation lemma") {
  Fermionic f = sl2();
  AngleVec nu{LinExp::symbolic("nu")};
  for (int m = 0; m <= 3; ++m) {
    RootElement mm({m});
    // relation 1: J^{(0,nu)} = I(q, q^nu z)
    SubstMap im;
    im.emplace(f.zsym(0), SubstImage::to(nu[0].q_power(1) * f.zmon(0)));
    CHECK(rf_equal(f.I(CornerProfile::single(0, nu), mm, Interval::from(0)),
                   f.I_base(mm).substitute(im)));
    for (long k = 1; k <= 3; ++k) {
      RationalFn jk = f.I(CornerProfile::single(k, nu), mm, Interval::from(0));
      // relation 2: cut at k
      RationalFn r2;
      for (int a = 0; a <= m; ++a) {
        RootElement ra({a}), rma({m - a});
        RationalFn head = f.shift_z(f.I(rma, Interval::finite(0, k - 1)), f.form().coupling(ra));
        RationalFn tail = f.I_base(ra).substitute(im).mul_monomial(f.zW_power(ra, k));
        r2 += head * tail;
      }
      CHECK(rf_equal(jk, r2));
      // relation 3: cut at k+1
      RationalFn r3;
      for (int a = 0; a <= m; ++a) {
        RootElement ra({a}), rma({m - a});
        RationalFn head = f.shift_z(f.I(rma, Interval::finite(0, k)), f.form().coupling(ra));
        Monomial pref = nu[0].q_power(a) * f.zW_power(ra, k + 1);
        RationalFn tail = f.I_base(ra).substitute(im).mul_monomial(pref);
        r3 += head * tail;
      }
      CHECK(rf_equal(jk, r3));
    }
  }
}

TEST_CASE("X closed form and cut independence") {
  Fermionic f = sl2();
  AngleVec nu{LinExp::symbolic("nu")};
  // m = 1: [nu 1] / ((z^{-1})_1 (q^nu z)_1)
  RationalFn x1 = f.X_corner(0, nu, RootElement({1}));
  Monomial z = f.zmon(0), qnu = Monomial::sym("nu");
  RationalFn expect(LaurentPoly::one_minus(qnu),
                    {LaurentPoly::one_minus(q()), LaurentPoly::one_minus(z.inverse()),
                     LaurentPoly::one_minus(qnu * z)});
  CHECK(rf_equal(x1, expect));
  CHECK(f.X_corner(0, nu, RootElement({0})).is_one());
  // integer angle vanishing: nu = 2, m = 3 gives 0
  CHECK(f.X_corner(0, {LinExp(2)}, RootElement({3})).is_zero());
  // X symmetry under z -> z^{-1} q^{-nu - Cm + diag C}
  for (int m = 1; m <= 3; ++m) {
    RootElement mm({m});
    RationalFn x = f.X_corner(0, nu, mm);
    SubstMap im;
    im.emplace(f.zsym(0),
               SubstImage::to(z.inverse() * Monomial::sym("nu", -1) * q(-2 * m + 2)));
    CHECK(rf_equal(x, x.substitute(im)));
  }
}

TEST_CASE("X cut independence for A2") {
  Fermionic f(QuadForm::bare({{2, -1}, {-1, 2}}));
  AngleVec nu{LinExp::symbolic("nu1"), LinExp::symbolic("nu2")};
  // X() verifies the (-1)- and 0-cuts against each other internally
  for (const auto& m : enumerate_Qplus(RootElement({2, 2}))) {
    if (m.height() > 3) continue;
    CHECK_NOTHROW(f.X_corner(0, nu, m));
  }
}

TEST_CASE("X symmetry for A2") {
  Fermionic f(QuadForm::bare({{2, -1}, {-1, 2}}));
  AngleVec nu{LinExp::symbolic("nu1"), LinExp::symbolic("nu2")};
  for (const auto& m : enumerate_Qplus(RootElement({2, 2}))) {
    if (m.height() > 3) continue;
    RationalFn x = f.X_corner(0, nu, m);
    SubstMap im;
    auto bm = f.form().coupling(m);
    for (int i = 0; i < 2; ++i) {
      Monomial image = f.zmon(i).inverse() * Monomial::sym(i == 0 ? "nu1" : "nu2", -1) *
                       Monomial::q_pow(f.form().B[i][i] - bm[i]);
      im.emplace(f.zsym(i), SubstImage::to(image));
    }
    CHECK(rf_equal(x, x.substitute(im)));
  }
}

TEST_CASE("sl2 closed-form reports") {
  for (int m = 0; m <= 4; ++m) {
    auto [val, rep] = sl2_closed(Sl2Closed::I, m);
    CHECK(rep.holds);
  }
  for (int m = 0; m <= 3; ++m) {
    CHECK(sl2_closed(Sl2Closed::X0, m).second.holds);
    CHECK(sl2_closed(Sl2Closed::prop3a, m).second.holds);
    CHECK(sl2_closed(Sl2Closed::prop3b, m).second.holds);
  }
}

TEST_CASE("quasi-classical examples and special cases") {
  Fermionic f = sl2();
  DecompParams p;
  for (long k = 0; k <= 3; ++k) {
    p.m = RootElement({1});
    p.k = k;
    CHECK(check_decomposition(f, "ex1", p).holds);
    p.m = RootElement({2});
    CHECK(check_decomposition(f, "ex2", p).holds);
  }
  // example 2 with a different scalar c
  Fermionic f3(QuadForm::bare({{3}}));
  p.m = RootElement({2});
  p.k = 2;
  CHECK(check_decomposition(f3, "ex2", p).holds);

  for (int m = 0; m <= 3; ++m) {
    p.m = RootElement({m});
    CHECK(check_decomposition(f, "rs0", p).holds);
    if (m > 0) CHECK(check_decomposition(f, "rs1", p).holds);
    p.r = 1;
    p.s = 3;
    CHECK(check_decomposition(f, "quasi", p).holds);
  }
  // general quasi-classical on A2
  Fermionic fa2(QuadForm::bare({{2, -1}, {-1, 2}}));
  DecompParams pa;
  pa.m = RootElement({1, 1});
  pa.r = 0;
  pa.s = 2;
  CHECK(check_decomposition(fa2, "quasi", pa).holds);
}

TEST_CASE("J = JX decompositions") {
  Fermionic f = sl2();
  DecompParams p;
  p.nu1 = {LinExp::symbolic("nu")};
  for (int m = 0; m <= 3; ++m) {
    p.m = RootElement({m});
    CHECK(check_decomposition(f, "jjx0", p).holds);
    CHECK(check_decomposition(f, "jjxm1", p).holds);
    for (long k = 1; k <= 2; ++k) {
      p.k = k;
      Report r = check_decomposition(f, "jjx", p);
      CHECK(r.holds);  // conjectural but observed to hold at desk scale
      CHECK(!r.asserted);
    }
  }
  Fermionic fa2(QuadForm::bare({{2, -1}, {-1, 2}}));
  DecompParams pa;
  pa.nu1 = {LinExp::symbolic("nu1"), LinExp::symbolic("nu2")};
  pa.m = RootElement({1, 1});
  CHECK(check_decomposition(fa2, "jjx0", pa).holds);
  CHECK(check_decomposition(fa2, "jjxm1", pa).holds);
}

TEST_CASE("X = XX decomposition") {
  Fermionic f = sl2();
  DecompParams p;
  p.nu1 = {LinExp::symbolic("nu")};
  p.nu2 = {LinExp::symbolic("xi")};
  for (int m = 0; m <= 2; ++m) {
    p.m = RootElement({m});
    CHECK(check_decomposition(f, "xxx", p).holds);
  }
}

TEST_CASE("two-corner decomposition (recorded, conjectural)") {
  Fermionic f = sl2();
  DecompParams p;
  p.nu1 = {LinExp::symbolic("nu")};
  p.nu2 = {LinExp::symbolic("xi")};
  p.k = 2;
  p.m = RootElement({2});
  Report r = check_decomposition(f, "two_corner", p);
  CHECK(!r.asserted);
  CHECK(r.holds);  // observed
}

TEST_CASE("multi-corner sl2 family") {
  Fermionic f = sl2();
  DecompParams p;
  p.m = RootElement({2});
  p.corner_positions = {0, 0, 0};
  Report display = check_decomposition(f, "mc24_display", p);
  CHECK(display.holds);
  Report fam = check_decomposition(f, "mc24", p);
  CHECK(fam.holds);
  CHECK(fam.asserted);
  p.corner_positions = {0, 1, 2};
  CHECK(check_decomposition(f, "mc24", p).holds);
  p.corner_positions = {1, 2};
  p.m = RootElement({1});
  CHECK(check_decomposition(f, "mc24", p).holds);
  // n < m: recorded but not asserted
  p.corner_positions = {1};
  p.m = RootElement({2});
  Report under = check_decomposition(f, "mc24", p);
  CHECK(!under.asserted);
}

TEST_CASE("cartan-denominator variant uses (q_i; q_i)") {
  CartanData b2 = build_cartan(LieKind::B, 2);
  Fermionic f(QuadForm::from_cartan(b2));
  // J^lambda_beta[0,0] analogue: single-slot sum is 1/(q)_beta
  RationalFn v = f.I(RootElement({1, 1}), Interval::finite(0, 0));
  RationalFn expect = RationalFn::reciprocal(b2.qfact_beta_factors(RootElement({1, 1})));
  CHECK(rf_equal(v, expect));
  // recursion runs with half-integer-free exponents here but exercises q^{d_i}
  CHECK_NOTHROW(f.I_base(RootElement({1, 1})));
}

TEST_CASE("degenerate leading factor is an error") {
  // C = 0 matrix: z^m q^W = z^m never 1, so use a crafted form with a zero row
  // instead: the degenerate case needs z-exponent zero, impossible with
  // independent symbols; emulate via rank-0... not constructible, so check
  // the divergent-profile error instead.
  Fermionic f = sl2();
  CHECK_THROWS_AS(f.X(CornerProfile::zero(), RootElement({1})), std::domain_error);
  CHECK_THROWS_AS(f.I(CornerProfile::single(1, {LinExp(1)}), RootElement({1}), Interval::upto(0)),
                  std::invalid_argument);
}
