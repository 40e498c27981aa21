#include "toda/rationalfn.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace toda {

RationalFn::RationalFn(const Rational& c) : num_(c) {}
RationalFn::RationalFn(const LaurentPoly& p) : num_(p) {}
RationalFn::RationalFn(const Monomial& m, const Rational& c) : num_(m, c) {}

RationalFn::RationalFn(LaurentPoly num, std::vector<LaurentPoly> den_factors) : num_(std::move(num)) {
  for (auto& f : den_factors) push_factor(std::move(f));
  canonicalize();
}

RationalFn RationalFn::reciprocal(std::vector<LaurentPoly> factors) {
  return RationalFn(LaurentPoly::one(), std::move(factors));
}

LaurentPoly RationalFn::den() const {
  LaurentPoly d = LaurentPoly::one();
  for (const auto& f : den_) d *= f;
  return d;
}

void RationalFn::push_factor(LaurentPoly f) {
  if (f.is_zero()) throw std::domain_error("zero denominator factor");
  if (const auto* t = f.single_term()) {
    // unit: fold into the numerator
    num_ = num_.mul_monomial(t->first.inverse()).mul_scalar(1 / t->second);
    return;
  }
  auto [unit, c] = f.normalize_unit();
  num_ = num_.mul_monomial(unit.inverse()).mul_scalar(1 / c);
  den_.push_back(std::move(f));
}

void RationalFn::canonicalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // cancel denominator factors that divide the numerator
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = den_.begin(); it != den_.end(); ++it) {
      if (auto q = num_.divide_exact(*it)) {
        num_ = std::move(*q);
        den_.erase(it);
        changed = true;
        break;
      }
    }
  }
  std::sort(den_.begin(), den_.end());
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

// multiset difference b \ a (factors of b not matched in a)
std::vector<LaurentPoly> multiset_diff(const std::vector<LaurentPoly>& b,
                                       const std::vector<LaurentPoly>& a) {
  std::vector<LaurentPoly> out;
  auto ia = a.begin();
  for (const auto& f : b) {
    while (ia != a.end() && *ia < f) ++ia;
    if (ia != a.end() && *ia == f) {
      ++ia;
    } else {
      out.push_back(f);
    }
  }
  return out;
}

LaurentPoly product_of(const std::vector<LaurentPoly>& fs) {
  LaurentPoly p = LaurentPoly::one();
  for (const auto& f : fs) p *= f;
  return p;
}

}  // namespace

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  // common denominator = multiset max of the two factor lists
  std::vector<LaurentPoly> mine_extra = multiset_diff(den_, o.den_);
  std::vector<LaurentPoly> theirs_extra = multiset_diff(o.den_, den_);
  LaurentPoly lhs = num_ * product_of(theirs_extra);
  LaurentPoly rhs = o.num_ * product_of(mine_extra);
  num_ = lhs + rhs;
  for (auto& f : theirs_extra) den_.push_back(std::move(f));
  std::sort(den_.begin(), den_.end());
  canonicalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFn::zero();
  num_ *= o.num_;
  den_.insert(den_.end(), o.den_.begin(), o.den_.end());
  std::sort(den_.begin(), den_.end());
  canonicalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  if (is_zero()) return *this;
  num_ *= product_of(o.den_);
  push_factor(o.num_);
  std::sort(den_.begin(), den_.end());
  canonicalize();
  return *this;
}

RationalFn RationalFn::mul_monomial(const Monomial& m) const {
  RationalFn r = *this;
  r.num_ = r.num_.mul_monomial(m);
  return r;
}

RationalFn RationalFn::pow(std::int64_t k) const {
  if (k == 0) return RationalFn::one();
  RationalFn base = *this;
  if (k < 0) {
    base = RationalFn::one() / base;
    k = -k;
  }
  RationalFn acc = RationalFn::one();
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

RationalFn RationalFn::substitute(const SubstMap& images) const {
  if (is_zero()) return RationalFn::zero();
  RationalFn cur = *this;

  // Regular limits at zero first, one symbol at a time.  The value at s = 0
  // is read off from valuations: writing num = s^a*N, factor_j = s^{b_j}*F_j
  // with N, F_j of valuation zero, the function is s^{a - sum b_j} * N/prod F_j.
  for (const auto& [s, img] : images) {
    if (img.mono.has_value()) continue;
    std::int32_t vnum = cur.num_.valuation(s);
    std::int32_t vden = 0;
    for (const auto& f : cur.den_) vden += f.valuation(s);
    std::int32_t total = vnum - vden;
    if (total < 0)
      throw PoleError("pole at " + symbol_name(s) + " = 0 of order " + std::to_string(-total));
    if (total > 0) {
      cur = RationalFn::zero();
      break;
    }
    LaurentPoly num0 = cur.num_.coefficient_of(s, vnum);
    std::vector<LaurentPoly> den0;
    den0.reserve(cur.den_.size());
    for (const auto& f : cur.den_) den0.push_back(f.coefficient_of(s, f.valuation(s)));
    cur = RationalFn(std::move(num0), std::move(den0));
  }
  if (cur.is_zero()) return cur;

  std::map<SymbolId, Monomial> mono_map;
  for (const auto& [s, img] : images)
    if (img.mono.has_value()) mono_map.emplace(s, *img.mono);
  if (mono_map.empty()) return cur;

  // Cancel denominator factors that the substitution would annihilate.
  // All factors produced by the evaluators are binomials, for which
  // divisibility by the vanishing factor is exactly regularity.
  for (bool again = true; again;) {
    again = false;
    for (auto it = cur.den_.begin(); it != cur.den_.end(); ++it) {
      if (!it->substitute(mono_map).is_zero()) continue;
      if (auto q = cur.num_.divide_exact(*it)) {
        cur.num_ = std::move(*q);
        cur.den_.erase(it);
        again = true;
        break;
      }
      throw PoleError("substitution zeroes denominator factor " + it->str());
    }
  }

  LaurentPoly num2 = cur.num_.substitute(mono_map);
  std::vector<LaurentPoly> den2;
  den2.reserve(cur.den_.size());
  for (const auto& f : cur.den_) den2.push_back(f.substitute(mono_map));
  return RationalFn(std::move(num2), std::move(den2));
}

RationalFn RationalFn::invert_q() const {
  std::vector<LaurentPoly> den2;
  den2.reserve(den_.size());
  for (const auto& f : den_) den2.push_back(f.invert_q());
  return RationalFn(num_.invert_q(), std::move(den2));
}

RationalFn RationalFn::scale_q_exponents(const Rational& s) const {
  auto scale_poly = [&](const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [m, c] : p.terms()) {
      Rational u = Rational(m.q_units()) * s;
      if (u.get_den() != 1) throw std::domain_error("scaled q exponent leaves the lattice");
      Monomial mm = Monomial::q_units_pow(u.get_num().get_si());
      for (const auto& [sym, e] : m.syms()) mm *= Monomial::sym(sym, e);
      out.add_term(mm, c);
    }
    return out;
  };
  std::vector<LaurentPoly> den2;
  den2.reserve(den_.size());
  for (const auto& f : den_) den2.push_back(scale_poly(f));
  return RationalFn(scale_poly(num_), std::move(den2));
}

std::string RationalFn::str() const {
  std::ostringstream os;
  os << "(" << num_.str() << ")";
  for (const auto& f : den_) os << " / (" << f.str() << ")";
  return os.str();
}

RationalFn arith(const RationalFn& a, const RationalFn& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::invalid_argument("bad op");
}

namespace {

void collect_symbols(const LaurentPoly& p, std::map<SymbolId, Rational>& point) {
  for (const auto& [m, c] : p.terms())
    for (const auto& [s, e] : m.syms()) point.emplace(s, 0);
}

}  // namespace

EqualityResult rf_equal_detail(const RationalFn& a, const RationalFn& b, EqualityMode mode,
                               std::uint64_t seed, int points) {
  if (mode == EqualityMode::exact) {
    // cross-multiply, cancelling shared factors first
    std::vector<LaurentPoly> a_extra = multiset_diff(a.den_factors(), b.den_factors());
    std::vector<LaurentPoly> b_extra = multiset_diff(b.den_factors(), a.den_factors());
    LaurentPoly lhs = a.num() * product_of(b_extra);
    LaurentPoly rhs = b.num() * product_of(a_extra);
    return lhs == rhs ? EqualityResult::equal : EqualityResult::not_equal;
  }

  std::map<SymbolId, Rational> point;
  collect_symbols(a.num(), point);
  collect_symbols(b.num(), point);
  for (const auto& f : a.den_factors()) collect_symbols(f, point);
  for (const auto& f : b.den_factors()) collect_symbols(f, point);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num_dist(2, 19);
  std::uniform_int_distribution<int> den_dist(2, 7);
  int valid = 0;
  const int max_attempts = 40 * points;
  for (int attempt = 0; attempt < max_attempts && valid < points; ++attempt) {
    Rational qv = make_rational(num_dist(rng), den_dist(rng));
    for (auto& [s, v] : point) v = make_rational(num_dist(rng), den_dist(rng));
    auto den_ok = [&](const RationalFn& f) {
      for (const auto& g : f.den_factors())
        if (g.evaluate(qv, point) == 0) return false;
      return true;
    };
    if (!den_ok(a) || !den_ok(b)) continue;
    Rational va = a.num().evaluate(qv, point);
    for (const auto& g : a.den_factors()) va /= g.evaluate(qv, point);
    Rational vb = b.num().evaluate(qv, point);
    for (const auto& g : b.den_factors()) vb /= g.evaluate(qv, point);
    if (va != vb) return EqualityResult::not_equal;
    ++valid;
  }
  if (valid < std::min(points, 3)) return EqualityResult::inconclusive;
  return EqualityResult::equal;
}

bool rf_equal(const RationalFn& a, const RationalFn& b, EqualityMode mode) {
  return rf_equal_detail(a, b, mode) == EqualityResult::equal;
}

}  // namespace toda
