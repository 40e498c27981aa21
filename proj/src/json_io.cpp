#include "toda/json_io.hpp"

#include <sstream>

namespace toda {

namespace {

std::string exp_str(const Rational& e) { return e.get_str(); }

Rational rational_from_str(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

Json term_to_json(const Monomial& m, const Rational& c) {
  Json t;
  t["coeff"] = c.get_str();
  t["q"] = exp_str(m.q_exponent());
  Json syms = Json::object();
  for (const auto& [s, e] : m.syms()) syms[symbol_name(s)] = e;
  t["syms"] = std::move(syms);
  return t;
}

Json poly_to_json(const LaurentPoly& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back(term_to_json(m, c));
  return arr;
}

LaurentPoly poly_from_json(const Json& arr) {
  LaurentPoly p;
  for (const auto& t : arr) {
    Monomial m = Monomial::q_pow(rational_from_str(t.at("q").get<std::string>()));
    for (const auto& [name, e] : t.at("syms").items())
      m *= Monomial::sym(name, e.get<std::int32_t>());
    p.add_term(m, rational_from_str(t.at("coeff").get<std::string>()));
  }
  return p;
}

}  // namespace

Json to_json(const RationalFn& f) {
  // normalize: fold the unit of the expanded denominator into the numerator
  LaurentPoly den = f.den();
  LaurentPoly num = f.num();
  if (!den.is_one()) {
    auto [unit, c] = den.normalize_unit();
    num = num.mul_monomial(unit.inverse()).mul_scalar(1 / c);
  }
  Json j;
  j["num"] = poly_to_json(num);
  j["den"] = poly_to_json(den);
  return j;
}

RationalFn rationalfn_from_json(const Json& j) {
  LaurentPoly num = poly_from_json(j.at("num"));
  LaurentPoly den = poly_from_json(j.at("den"));
  if (den.is_one()) return RationalFn(num);
  return RationalFn(std::move(num), {std::move(den)});
}

Json to_json(const CartanData& cd) {
  Json j;
  j["kind"] = std::string(1, lie_kind_char(cd.kind));
  j["rank"] = cd.rank;
  j["C"] = cd.C;
  j["d"] = cd.d;
  return j;
}

CartanData cartan_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "X") return build_custom(j.at("C").get<std::vector<std::vector<int>>>());
  return build_cartan(lie_kind_from_char(kind.at(0)), j.at("rank").get<int>());
}

Json to_json(const YSeries& f) {
  Json j;
  j["degree_bound"] = f.degree_bound;
  Json coeffs = Json::array();
  for (const auto& [m, v] : f.coeffs) {
    Json entry;
    entry["m"] = m.m;
    entry["value"] = to_json(v);
    coeffs.push_back(std::move(entry));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

YSeries yseries_from_json(const Json& j) {
  YSeries f;
  f.degree_bound = j.at("degree_bound").get<int>();
  for (const auto& entry : j.at("coeffs"))
    f.coeffs.emplace(RootElement(entry.at("m").get<std::vector<int>>()),
                     rationalfn_from_json(entry.at("value")));
  return f;
}

Json to_json(const Report& r) {
  Json j;
  j["identity"] = r.identity;
  j["params"] = r.params;
  j["holds"] = r.holds;
  j["lhs"] = to_json(r.lhs);
  j["rhs"] = to_json(r.rhs);
  j["runtime_ms"] = r.runtime_ms;
  if (!r.asserted) j["asserted"] = false;
  return j;
}

namespace {

void csv_poly(std::ostringstream& os, const LaurentPoly& p, const std::string& prefix) {
  for (const auto& [m, c] : p.terms()) {
    os << prefix << c.get_str() << "," << exp_str(m.q_exponent());
    for (const auto& [s, e] : m.syms()) os << "," << symbol_name(s) << "=" << e;
    os << "\n";
  }
}

}  // namespace

std::string to_csv(const RationalFn& f) {
  if (!f.is_polynomial())
    throw std::domain_error("CSV emits series coefficients only, not full rational functions");
  std::ostringstream os;
  os << "coeff,q_exp,symbols...\n";
  csv_poly(os, f.num(), "");
  return os.str();
}

std::string to_csv(const YSeries& f) {
  std::ostringstream os;
  os << "y_monomial,coeff,q_exp,symbols...\n";
  for (const auto& [m, v] : f.coeffs) {
    if (!v.is_polynomial())
      throw std::domain_error("CSV emits series coefficients only, not full rational functions");
    std::ostringstream key;
    for (std::size_t i = 0; i < m.m.size(); ++i) key << (i ? " " : "") << m.m[i];
    csv_poly(os, v.num(), key.str() + ",");
  }
  return os.str();
}

}  // namespace toda
