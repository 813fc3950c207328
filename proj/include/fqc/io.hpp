/*
   Copyright 2026 The fqc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqc/error.hpp"
#include "fqc/polynomial.hpp"

namespace fqc::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ConfigInvalid, where + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline long long integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) bad(where, "expected an integer");
    return v.get<long long>();
}

inline double number(const Json& v, const std::string& where) {
    if (!v.is_number()) bad(where, "expected a number");
    return v.get<double>();
}

inline ExponentVec exponent(const Json& v, std::size_t n, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array of integers");
    if (v.size() != n) bad(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    std::vector<int> e;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const long long x = integer(v[j], where + "[" + std::to_string(j) + "]");
        if (x < 0 || x > 1000000) bad(where, "exponents must lie in [0, 10^6]");
        e.push_back(static_cast<int>(x));
    }
    return ExponentVec(std::move(e));
}

inline Coefficient coefficient(const Json& v, const std::string& where) {
    if (!v.is_object()) bad(where, "expected {\"re\",\"im\"} or {\"num\",\"den\"}");
    if (v.contains("num")) {
        const long long num = integer(field(v, "num", where), where + ".num");
        const long long den = integer(field(v, "den", where), where + ".den");
        if (den == 0) bad(where + ".den", "denominator is zero");
        const Rational r(num, den);
        return Coefficient{to_double(r), r};
    }
    const double re = number(field(v, "re", where), where + ".re");
    const double im = v.contains("im") ? number(v["im"], where + ".im") : 0.0;
    return Coefficient{Complex(re, im), std::nullopt};
}

}  // namespace detail

inline Json coefficient_json(const Coefficient& c) {
    if (c.exact) return Json{{"num", c.exact->numerator()}, {"den", c.exact->denominator()}};
    return Json{{"re", c.value.real()}, {"im", c.value.imag()}};
}

inline Json complex_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline Json to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(Json{{"exp", std::vector<int>(e.entries().begin(), e.entries().end())}, {"coeff", coefficient_json(c)}});
    return Json{{"n", p.arity()}, {"terms", terms}};
}

inline Json to_json(const StablePair& pair) {
    Json j{{"P", to_json(pair.P())}, {"Q", to_json(pair.Q())}};
    j["ell"] = std::vector<int>(pair.ell().entries().begin(), pair.ell().entries().end());
    j["eta"] = pair.exact_eta() ? coefficient_json(Coefficient{pair.eta(), pair.exact_eta()}) : complex_json(pair.eta());
    j["relaxed"] = pair.normalization() == Normalization::Relaxed;
    return j;
}

/// {"n": int, "terms": [{"exp": [...], "coeff": {...}}, ...]}; the constant term must be listed.
inline MultiPoly poly_from_json(const Json& j, const std::string& where = "polynomial") {
    const long long n = detail::integer(detail::field(j, "n", where), where + ".n");
    if (n < 1 || n > 64) detail::bad(where + ".n", "arity must lie in [1, 64]");
    const Json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) detail::bad(where + ".terms", "expected an array");
    MultiPoly p(static_cast<std::size_t>(n));
    bool has_constant = false;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string at = where + ".terms[" + std::to_string(t) + "]";
        const ExponentVec e = detail::exponent(detail::field(terms[t], "exp", at), static_cast<std::size_t>(n), at + ".exp");
        has_constant = has_constant || e.is_zero();
        p.add(e, detail::coefficient(detail::field(terms[t], "coeff", at), at + ".coeff"));
    }
    if (!has_constant) detail::bad(where + ".terms", "constant term must be present");
    return p;
}

/// A pair file is a polynomial file with "ell" and "eta"; Q is derived as
/// eta z^ell P^iota, or read from an optional "Q" object. "relaxed": true
/// permits Q(0) != 1.
inline StablePair pair_from_json(const Json& j, const std::string& where = "pair") {
    const Json& pj = j.contains("P") ? j["P"] : j;
    const MultiPoly p = poly_from_json(pj, j.contains("P") ? where + ".P" : where);
    const ExponentVec ell = detail::exponent(detail::field(j, "ell", where), p.arity(), where + ".ell");
    const Coefficient eta = detail::coefficient(detail::field(j, "eta", where), where + ".eta");
    const bool relaxed = j.contains("relaxed") && j["relaxed"].is_boolean() && j["relaxed"].get<bool>();
    const Normalization norm = relaxed ? Normalization::Relaxed : Normalization::Strict;

    if (p.max_degrees() != ell)
        throw Error(ErrorCode::NoFunctionalEquation, where + ".ell: does not match the degree vector " + p.max_degrees().str());
    MultiPoly q = involute(p).cleared;
    q = eta.exact ? q.scaled(*eta.exact) : q.scaled(eta.value);
    if (j.contains("Q")) {
        const MultiPoly given = poly_from_json(j["Q"], where + ".Q");
        if (max_coefficient_distance(given, q) > kFunctionalEquationTol)
            throw Error(ErrorCode::NoFunctionalEquation, where + ".Q: not equal to eta z^ell P^iota");
        q = given;
    }
    return make_stable_pair(p, q, norm);
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ConfigInvalid, path + ": " + e.what());
    }
}

}  // namespace fqc::io
