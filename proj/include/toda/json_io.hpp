#pragma once

#include <json.hpp>

#include "toda/lie.hpp"
#include "toda/report.hpp"
#include "toda/toda.hpp"

namespace toda {

using Json = nlohmann::ordered_json;

/// {num: [term...], den: [term...]}, term = {coeff: "p/q", q: "a/N",
/// syms: {name: int}}.  The denominator is emitted as the expanded,
/// unit-normalized product of the kept factors, so serializing the parse of
/// an emitted object reproduces it byte for byte.
Json to_json(const RationalFn& f);
RationalFn rationalfn_from_json(const Json& j);

Json to_json(const CartanData& cd);  // {kind, rank, C, d}
CartanData cartan_from_json(const Json& j);

Json to_json(const YSeries& f);  // {degree_bound, coeffs: [{m: [..], value: ...}]}
YSeries yseries_from_json(const Json& j);

Json to_json(const Report& r);  // {identity, params, holds, lhs, rhs, runtime_ms}

/// CSV for Laurent-polynomial payloads: one row per monomial
/// (coeff, q exponent, then sym=exp columns).  Throws std::domain_error for
/// a value with a nontrivial denominator.
std::string to_csv(const RationalFn& f);
std::string to_csv(const YSeries& f);

}  // namespace toda
