#pragma once

// JSON form of a polynomial:
//   {"terms":[{"c":"-3","beta":1,"x":{"1":2},"b":{"3":1}}, ...]}
// Terms appear in canonical order; coefficients are decimal strings.

#include <string>

#include <nlohmann/json.hpp>

#include "ffg/polynomial.hpp"

namespace ffg {

inline nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json x = nlohmann::json::object(), b = nlohmann::json::object();
    for (const auto& v : m.x_powers()) x[std::to_string(v.index)] = v.exponent;
    for (const auto& v : m.b_powers()) b[std::to_string(v.index)] = v.exponent;
    terms.push_back({{"c", c.str()}, {"beta", m.beta_exponent()}, {"x", x}, {"b", b}});
  }
  return {{"terms", terms}};
}

inline std::string to_json_string(const Polynomial& p, int indent = -1) { return to_json(p).dump(indent); }

namespace detail {

inline std::uint32_t json_exponent(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xFFFFFFFFLL)
    throw invalid_argument("polynomial json: " + what + " must be a non-negative integer");
  return static_cast<std::uint32_t>(v.get<long long>());
}

inline std::uint32_t json_index(const std::string& key) {
  std::size_t used = 0;
  long long i = 0;
  try {
    i = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || i < 1 || i > 0xFFFFFFFFLL)
    throw invalid_argument("polynomial json: bad variable index '" + key + "'");
  return static_cast<std::uint32_t>(i);
}

}  // namespace detail

/// Inverse of to_json. Terms may come in any order and may repeat.
inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw invalid_argument("polynomial json: expected an object with a 'terms' array");
  std::vector<Polynomial::Term> out;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("c") || !t["c"].is_string())
      throw invalid_argument("polynomial json: every term needs a string coefficient 'c'");
    Integer c;
    try {
      c = Integer(t["c"].get<std::string>());
    } catch (const std::exception&) {
      throw invalid_argument("polynomial json: bad coefficient '" + t["c"].get<std::string>() + "'");
    }
    Monomial m;
    if (t.contains("beta")) m.set_beta(detail::json_exponent(t["beta"], "beta"));
    for (const char* kind : {"x", "b"}) {
      if (!t.contains(kind)) continue;
      if (!t[kind].is_object()) throw invalid_argument(std::string("polynomial json: '") + kind + "' must be an object");
      for (const auto& [key, e] : t[kind].items()) {
        const std::uint32_t idx = detail::json_index(key), exp = detail::json_exponent(e, "exponent");
        if (kind[0] == 'x')
          m.set_x(idx, exp);
        else
          m.set_b(idx, exp);
      }
    }
    out.emplace_back(std::move(m), std::move(c));
  }
  return Polynomial::from_terms(std::move(out));
}

inline Polynomial polynomial_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_argument(std::string("polynomial json: ") + e.what());
  }
  return polynomial_from_json(j);
}

}  // namespace ffg
