#include "toda/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toda {

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial::one(), c);
}

LaurentPoly::LaurentPoly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace_back(m, c);
}

LaurentPoly LaurentPoly::one_minus(const Monomial& w) {
  LaurentPoly p = one();
  p.add_term(w, -1);
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].second == 1 && terms_[0].first.is_one();
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

const LaurentPoly::Term* LaurentPoly::single_term() const {
  return terms_.size() == 1 ? &terms_[0] : nullptr;
}

Rational LaurentPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (const auto* t = b.single_term()) {
    out = a.mul_monomial(t->first);
    for (auto& [m, c] : out.terms_) c *= t->second;
    return out;
  }
  if (a.single_term()) return b * a;
  std::map<Monomial, Rational> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Rational& slot = acc[ma * mb];
      slot += ca * cb;
    }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.emplace_back(m, std::move(c));
  return out;
}

void LaurentPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.emplace(it, m, c);
  }
}

LaurentPoly LaurentPoly::mul_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [mm, c] : terms_) p.terms_.emplace_back(mm * m, c);
  // translation by a monomial is injective but not order-preserving
  std::sort(p.terms_.begin(), p.terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  return p;
}

LaurentPoly LaurentPoly::mul_scalar(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& [m, cc] : p.terms_) cc *= c;
  return p;
}

namespace {

// Exponent vector difference between two monomials, as (q units, per-symbol).
struct ExpDelta {
  std::int64_t q_units = 0;
  std::vector<std::pair<SymbolId, std::int64_t>> syms;  // sorted, nonzero

  bool is_zero() const { return q_units == 0 && syms.empty(); }
};

ExpDelta delta_of(const Monomial& from, const Monomial& to) {
  ExpDelta d;
  d.q_units = to.q_units() - from.q_units();
  auto a = from.syms().begin();
  auto b = to.syms().begin();
  while (a != from.syms().end() || b != to.syms().end()) {
    if (b == to.syms().end() || (a != from.syms().end() && a->first < b->first)) {
      d.syms.emplace_back(a->first, -std::int64_t(a->second));
      ++a;
    } else if (a == from.syms().end() || b->first < a->first) {
      d.syms.emplace_back(b->first, std::int64_t(b->second));
      ++b;
    } else {
      std::int64_t e = std::int64_t(b->second) - a->second;
      if (e != 0) d.syms.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return d;
}

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return LaurentPoly::zero();
  if (const auto* t = divisor.single_term()) {
    LaurentPoly q = mul_monomial(t->first.inverse());
    Rational inv = 1 / t->second;
    for (auto& [m, c] : q.terms_) c *= inv;
    return q;
  }
  if (divisor.term_count() != 2) return std::nullopt;

  // Divide by a binomial c_lo*L + c_hi*H = c_lo*L*(1 + ratio*w), w = H/L.
  // Group the dividend by residue classes of the exponent lattice modulo
  // Z*w; within a class the problem is univariate synthetic division by
  // (1 + ratio*x).  Orient w so its pivot coordinate is positive.
  ExpDelta d = delta_of(divisor.terms()[0].first, divisor.terms()[1].first);
  if (d.is_zero()) throw std::logic_error("degenerate two-term divisor");
  bool pivot_is_q = (d.q_units != 0);
  SymbolId pivot_sym = pivot_is_q ? 0 : d.syms[0].first;
  std::int64_t step = pivot_is_q ? d.q_units : d.syms[0].second;
  const bool swapped = step < 0;
  const Term& lo = divisor.terms()[swapped ? 1 : 0];
  const Term& hi = divisor.terms()[swapped ? 0 : 1];
  if (swapped) step = -step;
  Monomial w = hi.first * lo.first.inverse();
  Rational ratio = hi.second / lo.second;

  LaurentPoly shifted = mul_monomial(lo.first.inverse());
  struct Bucket {
    std::map<std::int64_t, Rational> coeffs;  // position along w -> coefficient
  };
  std::map<Monomial, Bucket> buckets;
  for (const auto& [m, c] : shifted.terms()) {
    std::int64_t e = pivot_is_q ? m.q_units() : m.exponent_of(pivot_sym);
    std::int64_t k = floordiv(e, step);
    buckets[m * w.pow(-k)].coeffs[k] = c;
  }

  LaurentPoly quotient;
  Rational inv_clo = 1 / lo.second;
  for (auto& [rep, b] : buckets) {
    std::int64_t kmin = b.coeffs.begin()->first;
    std::int64_t kmax = b.coeffs.rbegin()->first;
    std::map<std::int64_t, Rational> q;
    Rational carry = 0;
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      Rational ck = carry;
      auto f = b.coeffs.find(k);
      if (f != b.coeffs.end()) ck += f->second;
      if (ck != 0) {
        q[k] = ck;
        carry = -ck * ratio;
      } else {
        carry = 0;
      }
    }
    if (carry != 0) return std::nullopt;  // nonzero remainder
    for (const auto& [k, c] : q) quotient.add_term(rep * w.pow(k), c * inv_clo);
  }
  return quotient;
}

LaurentPoly LaurentPoly::invert_q() const {
  LaurentPoly p;
  for (const auto& [m, c] : terms_) p.add_term(m.invert_q(), c);
  return p;
}

LaurentPoly LaurentPoly::substitute(const std::map<SymbolId, Monomial>& images) const {
  LaurentPoly p;
  for (const auto& [m, c] : terms_) {
    Monomial out = Monomial::q_units_pow(m.q_units());
    for (const auto& [s, e] : m.syms()) {
      auto it = images.find(s);
      if (it == images.end())
        out *= Monomial::sym(s, e);
      else
        out *= it->second.pow(e);
    }
    p.add_term(out, c);
  }
  return p;
}

std::int32_t LaurentPoly::valuation(SymbolId s) const {
  std::int32_t v = INT32_MAX;
  for (const auto& [m, c] : terms_) v = std::min(v, m.exponent_of(s));
  return terms_.empty() ? 0 : v;
}

LaurentPoly LaurentPoly::coefficient_of(SymbolId s, std::int32_t v) const {
  LaurentPoly p;
  for (const auto& [m, c] : terms_) {
    if (m.exponent_of(s) != v) continue;
    p.add_term(m * Monomial::sym(s, v).inverse(), c);
  }
  return p;
}

bool LaurentPoly::contains_symbol(SymbolId s) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent_of(s) != 0) return true;
  return false;
}

namespace {

Rational rational_pow(const Rational& base, std::int64_t e) {
  if (e == 0) return 1;
  if (base == 0) {
    if (e < 0) throw std::domain_error("0 to a negative power");
    return 0;
  }
  Rational b = e > 0 ? base : Rational(1) / base;
  std::uint64_t n = e > 0 ? e : -e;
  Rational acc = 1;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

}  // namespace

Rational LaurentPoly::evaluate(const Rational& q_root_value,
                               const std::map<SymbolId, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c * rational_pow(q_root_value, m.q_units());
    for (const auto& [s, e] : m.syms()) {
      auto it = point.find(s);
      if (it == point.end()) throw std::invalid_argument("unassigned symbol " + symbol_name(s));
      v *= rational_pow(it->second, e);
    }
    total += v;
  }
  return total;
}

std::pair<Monomial, Rational> LaurentPoly::normalize_unit() {
  if (terms_.empty()) throw std::domain_error("cannot normalize the zero polynomial");
  // monomial gcd: minimum q units and per-symbol minimum exponent
  std::int64_t qmin = terms_[0].first.q_units();
  std::map<SymbolId, std::int32_t> emin;
  for (const auto& [m, c] : terms_) qmin = std::min(qmin, m.q_units());
  // a symbol missing from a term has exponent 0
  std::map<SymbolId, std::int32_t> seen_count;
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m.syms()) {
      auto [it, fresh] = emin.try_emplace(s, e);
      if (!fresh) it->second = std::min(it->second, e);
      seen_count[s]++;
    }
  for (auto& [s, e] : emin)
    if (seen_count[s] != static_cast<std::int32_t>(terms_.size())) e = std::min(e, 0);

  Monomial unit = Monomial::q_units_pow(qmin);
  for (const auto& [s, e] : emin) unit *= Monomial::sym(s, e);
  if (!unit.is_one()) *this = mul_monomial(unit.inverse());
  Rational c0 = terms_[0].second;  // coefficient of the smallest monomial
  if (c0 != 1) {
    Rational inv = 1 / c0;
    for (auto& [m, c] : terms_) c *= inv;
  }
  return {unit, c0};
}

std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].first <=> b.terms_[i].first; c != 0) return c;
    if (int c = cmp(a.terms_[i].second, b.terms_[i].second); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (m.is_one()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << m.str();
    }
    first = false;
  }
  return os.str();
}

}  // namespace toda
