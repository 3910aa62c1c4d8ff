#include "apnls/io/series_literal.hpp"

#include <algorithm>
#include <string>

#include "apnls/core/errors.hpp"

namespace apnls::io {

void require_known_keys(const json& object, std::initializer_list<const char*> allowed,
                        const std::string& section) {
  if (!object.is_object()) throw ConfigError(section + ": expected an object");
  for (const auto& item : object.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(section + ": unknown key '" + item.key() + "'");
  }
}

json series_to_json(const APSeries& f) {
  json out = json::array();
  for (const Term& t : f.terms()) {
    json term = json::array();
    for (int n : t.freq.components()) term.push_back(n);
    term.push_back(t.coeff.real());
    term.push_back(t.coeff.imag());
    out.push_back(std::move(term));
  }
  return out;
}

APSeries series_from_json(const BasisPtr& basis, const json& terms) {
  if (!terms.is_array()) throw ConfigError("series literal must be an array of terms");
  const std::size_t G = basis->dim();
  std::vector<Term> out;
  for (const json& term : terms) {
    if (!term.is_array() || term.size() != G + 2) {
      throw ConfigError("series term must have the form [n_1, ..., n_" + std::to_string(G) +
                        ", re, im]; got " + term.dump());
    }
    FreqVector n(G);
    for (std::size_t j = 0; j < G; ++j) {
      if (!term[j].is_number_integer()) throw ConfigError("frequency index must be an integer: " + term.dump());
      n[j] = term[j].get<int>();
    }
    if (!term[G].is_number() || !term[G + 1].is_number()) {
      throw ConfigError("coefficient must be numeric: " + term.dump());
    }
    out.push_back({n, Complex(term[G].get<double>(), term[G + 1].get<double>())});
  }
  return APSeries(basis, std::move(out));
}

double generator_from_json(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return named_generator(value.get<std::string>());
  throw ConfigError("basis generator must be a number or a named constant, got " + value.dump());
}

BasisPtr basis_from_json(const json& spec) {
  const json* gens = &spec;
  bool independent = true;
  double tol = kDefaultIndependenceTol;
  if (spec.is_object()) {
    require_known_keys(spec, {"generators", "independent", "independence_tol"}, "basis");
    if (!spec.contains("generators")) throw ConfigError("basis: missing 'generators'");
    gens = &spec.at("generators");
    if (spec.contains("independent")) independent = spec.at("independent").get<bool>();
    if (spec.contains("independence_tol")) tol = spec.at("independence_tol").get<double>();
  }
  if (!gens->is_array() || gens->empty()) throw ConfigError("basis: generators must be a non-empty list");
  std::vector<double> values;
  for (const json& g : *gens) values.push_back(generator_from_json(g));
  try {
    return make_basis(std::move(values), independent, tol);
  } catch (const Error& e) {
    throw ConfigError(std::string("basis: ") + e.what());
  }
}

Complex complex_from_json(const json& value, const std::string& what) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw ConfigError(what + " must be a number or [re, im], got " + value.dump());
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace apnls::io
