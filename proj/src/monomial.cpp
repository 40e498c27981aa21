#include "toda/monomial.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace toda {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::unordered_map<std::string, SymbolId> ids;
  std::vector<std::string> names;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::atomic<std::int64_t> g_lattice_den{2};

}  // namespace

SymbolId symbol(const std::string& name) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  SymbolId id = static_cast<SymbolId>(t.names.size());
  t.ids.emplace(name, id);
  t.names.push_back(name);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(id);
}

void set_q_lattice_den(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("q lattice denominator must be positive");
  g_lattice_den.store(n);
}

std::int64_t q_lattice_den() { return g_lattice_den.load(); }

Monomial Monomial::q_units_pow(std::int64_t units) {
  Monomial m;
  m.q_units_ = units;
  return m;
}

Monomial Monomial::q_pow(std::int64_t e) { return q_units_pow(e * q_lattice_den()); }

Monomial Monomial::q_pow(const Rational& e) {
  Rational u = e * q_lattice_den();
  if (u.get_den() != 1)
    throw std::domain_error("q exponent " + e.get_str() + " outside lattice (1/" +
                            std::to_string(q_lattice_den()) + ")Z");
  if (!u.get_num().fits_slong_p()) throw std::overflow_error("q exponent too large");
  return q_units_pow(u.get_num().get_si());
}

Monomial Monomial::sym(SymbolId id, std::int32_t e) {
  Monomial m;
  if (e != 0) m.syms_.emplace_back(id, e);
  return m;
}

Monomial Monomial::sym(const std::string& name, std::int32_t e) { return sym(symbol(name), e); }

Rational Monomial::q_exponent() const { return make_rational(q_units_, q_lattice_den()); }

std::int32_t Monomial::exponent_of(SymbolId id) const {
  for (const auto& [s, e] : syms_)
    if (s == id) return e;
  return 0;
}

Monomial& Monomial::operator*=(const Monomial& o) {
  q_units_ += o.q_units_;
  if (o.syms_.empty()) return *this;
  std::vector<std::pair<SymbolId, std::int32_t>> out;
  out.reserve(syms_.size() + o.syms_.size());
  auto a = syms_.begin();
  auto b = o.syms_.begin();
  while (a != syms_.end() && b != o.syms_.end()) {
    if (a->first < b->first) {
      out.push_back(*a++);
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      std::int32_t e = a->second + b->second;
      if (e != 0) out.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, syms_.end());
  out.insert(out.end(), b, o.syms_.end());
  syms_ = std::move(out);
  return *this;
}

Monomial Monomial::inverse() const {
  Monomial m;
  m.q_units_ = -q_units_;
  m.syms_ = syms_;
  for (auto& [s, e] : m.syms_) e = -e;
  return m;
}

Monomial Monomial::pow(std::int64_t k) const {
  Monomial m;
  m.q_units_ = q_units_ * k;
  if (k != 0) {
    m.syms_ = syms_;
    for (auto& [s, e] : m.syms_) {
      std::int64_t p = static_cast<std::int64_t>(e) * k;
      if (p > INT32_MAX || p < INT32_MIN) throw std::overflow_error("symbol exponent overflow");
      e = static_cast<std::int32_t>(p);
    }
  }
  return m;
}

Monomial Monomial::invert_q() const {
  Monomial m = *this;
  m.q_units_ = -m.q_units_;
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = std::hash<std::int64_t>{}(q_units_);
  for (const auto& [s, e] : syms_) {
    h ^= (std::hash<std::uint64_t>{}((std::uint64_t(s) << 32) ^ std::uint32_t(e)) + 0x9e3779b97f4a7c15ULL +
          (h << 6) + (h >> 2));
  }
  return h;
}

std::string Monomial::str() const {
  if (is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  if (q_units_ != 0) {
    Rational e = q_exponent();
    os << "q";
    if (e != 1) os << "^" << e.get_str();
    first = false;
  }
  for (const auto& [s, e] : syms_) {
    if (!first) os << "*";
    os << symbol_name(s);
    if (e != 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

}  // namespace toda
