#include "toda/suite.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "toda/toda.hpp"

namespace toda {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<RootElement> height_box(int rank, int h) {
  std::vector<RootElement> out;
  for (const auto& m : enumerate_Qplus(RootElement(std::vector<int>(rank, h))))
    if (m.height() <= h) out.push_back(m);
  return out;
}

struct Checker {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

void run_parallel(std::vector<std::function<void()>> jobs, int threads) {
  if (threads <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int n = std::min<int>(threads, static_cast<int>(jobs.size()));
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) jobs[i]();
    });
  for (auto& th : pool) th.join();
}

// ------------------------- the twelve criteria ----------------------------

void criterion1(Checker& c) {
  for (int m = 0; m <= 6; ++m) {
    auto [val, rep] = sl2_closed(Sl2Closed::I, m);
    c.expect(rep.holds, "I closed form fails at m=" + std::to_string(m));
  }
  for (int m = 0; m <= 4; ++m)
    c.expect(sl2_closed(Sl2Closed::X0, m).second.holds, "X0 closed form fails at m=" + std::to_string(m));
}

void criterion2(Checker& c) {
  Fermionic f(QuadForm::bare({{2}}));
  DecompParams p;
  for (long k = 0; k <= 3; ++k) {
    p.k = k;
    p.m = RootElement({1});
    c.expect(check_decomposition(f, "ex1", p).holds, "example 1 fails at k=" + std::to_string(k));
    p.m = RootElement({2});
    c.expect(check_decomposition(f, "ex2", p).holds, "example 2 fails at k=" + std::to_string(k));
  }
  p.m = RootElement({2});
  p.corner_positions = {0, 0, 0};
  c.expect(check_decomposition(f, "mc24_display", p).holds, "multi-corner display fails");
}

void criterion3(Checker& c) {
  std::vector<QuadForm> forms;
  for (int r = 1; r <= 3; ++r) forms.push_back(QuadForm::bare(build_cartan(LieKind::A, r).C));
  forms.push_back(QuadForm::bare({{4, 1}, {1, 2}}));
  for (auto& form : forms) {
    Fermionic f(form);
    for (const auto& m : height_box(form.rank, 5)) {
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
      c.expect(rf_equal(f.I_base(m), rhs), "recursion residual nonzero at m=" + m.str());
    }
  }
}

void criterion4(Checker& c) {
  for (int r = 1; r <= 3; ++r) {
    CartanData cd = build_cartan(LieKind::A, r);
    JContext ctx(cd);
    Fermionic fer(QuadForm::bare(cd.C));
    for (const auto& beta : height_box(r, 4))
      c.expect(rf_equal(ctx.J(beta), fer.I_base(beta)),
               "J != I at A" + std::to_string(r) + " beta=" + beta.str());
  }
}

void criterion5(Checker& c) {
  for (int r = 1; r <= 2; ++r) {
    JContext ctx(build_cartan(LieKind::A, r));
    for (const auto& beta : height_box(r, 3))
      for (const char* id : {"id1", "id2", "id3", "id4"}) {
        Report rep = verify_identity(ctx, id, beta);
        c.expect(rep.holds, std::string(id) + " fails at " + rep.params);
      }
  }
}

void criterion6(Checker& c) {
  std::vector<CartanData> cds = {build_cartan(LieKind::A, 1), build_cartan(LieKind::A, 2),
                                 build_cartan(LieKind::B, 2)};
  for (auto& cd : cds) {
    JContext ctx(cd);
    for (const auto& beta : height_box(cd.rank, 4)) {
      Report r = verify_identity(ctx, "kminus1", beta);
      c.expect(r.holds, "k=-1 sum fails at " + r.params);
      if (cd.is_simply_laced()) {
        Report r0 = verify_identity(ctx, "k0", beta);
        c.expect(r0.holds, "k=0 sum fails at " + r0.params);
      }
    }
  }
}

void criterion7(Checker& c) {
  JContext c1(build_cartan(LieKind::A, 1));
  for (int m = 0; m <= 3; ++m)
    for (long k = 0; k <= 3; ++k) {
      Report r = verify_identity(c1, "J0k", RootElement({m}), k);
      c.expect(r.holds, "J[0,k] fails at " + r.params);
    }
  JContext c2(build_cartan(LieKind::A, 2));
  for (const auto& beta : enumerate_Qplus(RootElement({1, 1})))
    for (long k = 0; k <= 2; ++k) {
      Report r = verify_identity(c2, "J0k", beta, k);
      c.expect(r.holds, "J[0,k] fails at " + r.params);
    }
}

void criterion8(Checker& c) {
  std::vector<CartanData> cds = {build_cartan(LieKind::A, 1), build_cartan(LieKind::A, 2),
                                 build_cartan(LieKind::B, 2)};
  for (auto& cd : cds) {
    JContext ctx(cd);
    for (const auto& beta : height_box(cd.rank, 4)) {
      Report z0 = verify_identity(ctx, "Jz0", beta);
      c.expect(z0.holds, "J at z=0 fails at " + z0.params);
      Report qi = verify_identity(ctx, "Jqinv", beta);
      c.expect(qi.holds, "J q->1/q symmetry fails at " + qi.params);
    }
  }
}

void criterion9(Checker& c) {
  {
    JContext a1(build_cartan(LieKind::A, 1));
    c.expect(eigen_check_A(a1, 5).holds, "eigenfunction check fails for A1");
    JContext a2(build_cartan(LieKind::A, 2));
    c.expect(eigen_check_A(a2, 4).holds, "eigenfunction check fails for A2");
  }
  for (auto [kind, rank] : std::vector<std::pair<LieKind, int>>{{LieKind::A, 1},
                                                                {LieKind::A, 2},
                                                                {LieKind::A, 3},
                                                                {LieKind::B, 2},
                                                                {LieKind::C, 2}}) {
    JContext ctx = make_epsilon_context(kind, rank);
    for (const auto& beta : height_box(rank, 4)) {
      Report r = verify_toda_recursion(ctx, beta);
      c.expect(r.holds, "toda display fails at " + r.params);
    }
  }
}

void criterion10(Checker& c) {
  for (int l = 1; l <= 2; ++l)
    for (const auto& r : verify_appendixA(l, 4))
      c.expect(r.holds, r.identity + " fails for " + r.params);
}

void criterion11(Checker& c) {
  {  // sl2 family
    CartanData a1 = build_cartan(LieKind::A, 1);
    JContext ctx(a1);
    WeightExpr two_rho = WeightExpr::rho(1).scaled(2);
    for (int n = 0; n <= 2; ++n)
      for (int m = n + 1; m <= 4; ++m) {
        RootElement beta({m});
        WeightExpr bw = WeightExpr::from_root(a1, beta);
        WeightExpr lam2 = bw;
        WeightExpr lam1 = bw - two_rho - lam2 - WeightExpr::integral({Rational(n)});
        VanishingReport r = check_vanishing(ctx, beta, lam1, lam2);
        c.expect(r.hypotheses_ok && r.predicted_zero && r.observed_zero,
                 "sl2 vanishing fails at n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
  }
  for (int rank = 1; rank <= 2; ++rank) {  // brute-forced instances
    CartanData cd = build_cartan(LieKind::A, rank);
    JContext ctx(cd);
    WeightExpr two_rho = WeightExpr::rho(rank).scaled(2);
    int exercised = 0;
    for (const auto& beta : height_box(rank, 3)) {
      if (beta.is_zero()) continue;
      WeightExpr bw = WeightExpr::from_root(cd, beta);
      for (const auto& nu : height_box(rank, 2)) {
        std::vector<Rational> nv(rank);
        for (int i = 0; i < rank; ++i) nv[i] = nu[i];
        WeightExpr nubar = WeightExpr::integral(nv);
        WeightExpr lam2 = bw;
        WeightExpr lam1 = bw - two_rho - lam2 - nubar;
        VanishingReport r = check_vanishing(ctx, beta, lam1, lam2);
        c.expect(r.hypotheses_ok, "hypothesis construction broke at " + r.params);
        if (r.predicted_zero) {
          ++exercised;
          c.expect(r.observed_zero, "predicted vanishing not observed at " + r.params);
        }
      }
    }
    c.expect(exercised > 0, "no vanishing instance discovered");
  }
}

void criterion12(Checker& c) {
  // a closed form with one coefficient off by q must fail every equality path
  auto [closed, rep] = sl2_closed(Sl2Closed::I, 2);
  RationalFn corrupted = closed.mul_monomial(Monomial::q_pow(std::int64_t(1)));
  Fermionic f(QuadForm::bare({{2}}));
  RationalFn truth = f.I_base(RootElement({2}));
  c.expect(rf_equal_detail(truth, corrupted, EqualityMode::exact) == EqualityResult::not_equal,
           "exact equality accepted a corrupted closed form");
  c.expect(rf_equal_detail(truth, corrupted, EqualityMode::probabilistic, 0x5eed, 5) ==
               EqualityResult::not_equal,
           "probabilistic equality accepted a corrupted closed form");
  // and through the report path
  bool smoke_catches = false;
  for (const auto& r : run_smoke(true))
    if (!r.holds && r.identity.find("negative control") != std::string::npos) smoke_catches = true;
  c.expect(smoke_catches, "suite did not flag the corrupted fixture");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int threads) {
  struct Spec {
    int number;
    const char* label;
    double limit;
    void (*fn)(Checker&);
  };
  const std::vector<Spec> specs = {
      {1, "sl2 closed forms (I up to m=6, X0 up to m=4, symbolic angle)", 5, criterion1},
      {2, "quasi-classical examples 1-2 (k <= 3) and the multi-corner display", 5, criterion2},
      {3, "fermionic recursion residual, A ranks <= 3 and custom rank 2, heights <= 5", 60, criterion3},
      {4, "J matches the fermionic sum for A1-A3, heights <= 4", 60, criterion4},
      {5, "identities id1-id4 with both weights symbolic, A1-A2, heights <= 3", 120, criterion5},
      {6, "k=-1 delta sum (A1, A2, B2) and k=0 sum (ADE), heights <= 4", 60, criterion6},
      {7, "interval identity J[0,k] for A1 (k <= 3) and A2 (k <= 2)", 60, criterion7},
      {8, "J at z=0 and the q -> 1/q symmetry, A1, A2, B2, heights <= 4", 30, criterion8},
      {9, "Toda eigenfunction (A1 D=5, A2 D=4) and recursion relations A1-A3, B2, C2", 120, criterion9},
      {10, "appendix symmetry and Lambda-equivalence, ranks 1-2, degree 4", 60, criterion10},
      {11, "vanishing instances (sl2 family and brute-forced A1/A2)", 60, criterion11},
      {12, "negative control: a corrupted closed form fails every path", 30, criterion12},
  };
  std::vector<CriterionResult> results(specs.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    jobs.emplace_back([i, &specs, &results] {
      const Spec& s = specs[i];
      CriterionResult r;
      r.number = s.number;
      r.label = s.label;
      r.limit_seconds = s.limit;
      Checker ck;
      auto t0 = Clock::now();
      try {
        s.fn(ck);
      } catch (const std::exception& e) {
        ck.ok = false;
        ck.detail = std::string("exception: ") + e.what();
      }
      r.seconds = seconds_since(t0);
      r.pass = ck.ok && r.seconds < r.limit_seconds;
      r.detail = ck.detail;
      if (ck.ok && r.seconds >= r.limit_seconds) r.detail = "runtime limit exceeded";
      results[i] = std::move(r);
    });
  }
  run_parallel(std::move(jobs), threads);
  return results;
}

std::vector<Report> run_smoke(bool negative_control, int threads) {
  std::vector<std::function<Report()>> makers;
  auto add = [&](std::function<Report()> fn) { makers.push_back(std::move(fn)); };

  add([] { return sl2_closed(Sl2Closed::I, 2).second; });
  add([] { return sl2_closed(Sl2Closed::X0, 1).second; });
  add([] { return sl2_closed(Sl2Closed::prop3a, 2).second; });
  add([] { return sl2_closed(Sl2Closed::prop3b, 2).second; });

  auto fermionic_check = [](const std::string& which, DecompParams p) {
    return [which, p = std::move(p)]() {
      Fermionic f(QuadForm::bare({{2}}));
      return check_decomposition(f, which, p);
    };
  };
  DecompParams p1;
  p1.m = RootElement({1});
  p1.k = 1;
  add(fermionic_check("ex1", p1));
  DecompParams p2 = p1;
  p2.m = RootElement({2});
  add(fermionic_check("ex2", p2));
  DecompParams pq = p2;
  pq.r = 0;
  pq.s = 1;
  add(fermionic_check("quasi", pq));
  add(fermionic_check("rs0", p2));
  add(fermionic_check("rs1", p2));
  DecompParams pj;
  pj.m = RootElement({2});
  pj.nu1 = {LinExp::symbolic("nu")};
  add(fermionic_check("jjx0", pj));
  add(fermionic_check("jjxm1", pj));
  DecompParams pjk = pj;
  pjk.k = 1;
  add(fermionic_check("jjx", pjk));
  DecompParams px = pj;
  px.nu2 = {LinExp::symbolic("xi")};
  add(fermionic_check("xxx", px));
  DecompParams ptc = px;
  ptc.k = 1;
  ptc.m = RootElement({1});
  add(fermionic_check("two_corner", ptc));
  DecompParams pmc;
  pmc.m = RootElement({2});
  pmc.corner_positions = {0, 0, 0};
  add(fermionic_check("mc24_display", pmc));
  add(fermionic_check("mc24", pmc));

  for (const char* id : {"id1", "id2", "id3", "id4", "kminus1", "k0", "Xsym", "Xqinv", "Jqinv", "Jz0"})
    add([id] {
      JContext ctx(build_cartan(LieKind::A, 1));
      return verify_identity(ctx, id, RootElement({1}));
    });
  add([] {
    JContext ctx(build_cartan(LieKind::A, 1));
    return verify_identity(ctx, "J0k", RootElement({2}), 1);
  });
  add([] {
    JContext ctx(build_cartan(LieKind::B, 2));
    return verify_identity(ctx, "kminus1", RootElement({1, 1}));
  });

  add([] {
    CartanData a1 = build_cartan(LieKind::A, 1);
    JContext ctx(a1);
    RootElement beta({2});
    WeightExpr bw = WeightExpr::from_root(a1, beta);
    WeightExpr lam1 = bw - WeightExpr::rho(1).scaled(2) - bw - WeightExpr::integral({Rational(1)});
    VanishingReport v = check_vanishing(ctx, beta, lam1, bw);
    Report r;
    r.identity = "vanishing";
    r.params = v.params;
    r.holds = v.hypotheses_ok && v.holds && v.predicted_zero == v.observed_zero;
    r.runtime_ms = v.runtime_ms;
    return r;
  });

  add([] { return verify_toda_recursion(LieKind::A, 1, RootElement({2})); });
  add([] { return verify_toda_recursion(LieKind::B, 2, RootElement({1, 1})); });
  add([] { return verify_toda_recursion(LieKind::C, 2, RootElement({1, 1})); });
  add([] {
    JContext ctx(build_cartan(LieKind::A, 1));
    return eigen_check_A(ctx, 3);
  });
  add([] {
    auto reports = verify_appendixA(1, 2);
    Report merged;
    merged.identity = "appendixA";
    merged.params = "A1, D=2";
    merged.holds = true;
    for (const auto& r : reports) {
      merged.holds = merged.holds && r.holds;
      merged.runtime_ms += r.runtime_ms;
    }
    return merged;
  });

  if (negative_control) {
    add([] {
      auto t0 = Clock::now();
      Fermionic f(QuadForm::bare({{2}}));
      Report r;
      r.identity = "negative control (corrupted closed form)";
      r.params = "m=2, coefficient off by q";
      r.lhs = f.I_base(RootElement({2}));
      r.rhs = sl2_closed(Sl2Closed::I, 2).first.mul_monomial(Monomial::q_pow(std::int64_t(1)));
      r.holds = rf_equal(r.lhs, r.rhs);
      r.runtime_ms = seconds_since(t0) * 1000;
      return r;
    });
  }

  std::vector<Report> out(makers.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < makers.size(); ++i)
    jobs.emplace_back([i, &makers, &out] { out[i] = makers[i](); });
  run_parallel(std::move(jobs), threads);
  return out;
}

int env_thread_cap() {
  const char* env = std::getenv("TODA_FERMION_NUM_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

}  // namespace toda
