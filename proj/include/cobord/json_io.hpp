#pragma once

#include <json.hpp>

#include <string>

#include "cobord/graded_series.hpp"

namespace cobord {

using Json = nlohmann::ordered_json;

inline Json coeff_to_json(const CoeffPoly& p) {
  Json monos = Json::array();
  for (auto* t : p.sorted_terms()) {
    const auto& [e, c] = *t;
    Json exps = Json::object();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) exps[std::to_string(i + 1)] = e[i];
    monos.push_back({{"exps", exps}, {"num", c.num_str()}, {"den", c.den_str()}});
  }
  return Json{{"monomials", monos}};
}

inline CoeffPoly coeff_from_json(const Json& j) {
  CoeffPoly p;
  for (const auto& m : j.at("monomials")) {
    BExps e;
    for (const auto& [key, val] : m.at("exps").items()) {
      std::size_t i = std::stoul(key);
      if (i == 0) throw ParseError("coeff json: generator index 0");
      if (e.size() < i) e.resize(i, 0);
      e[i - 1] = val.get<std::uint32_t>();
    }
    Rational c = Rational::parse(m.at("num").get<std::string>() + "/" +
                                 m.at("den").get<std::string>());
    p += CoeffPoly::monomial(std::move(e), c);
  }
  return p;
}

inline Json series_to_json(const GradedSeries& s) {
  Json vars = Json::array();
  for (VarId v : s.vars())
    vars.push_back({{"name", var_name(v)}, {"degree", var_degree(v)}});
  Json terms = Json::array();
  for (const auto& [m, c] : s.sorted_terms()) {
    Json exps = Json::object();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) exps[var_name(s.vars()[i])] = m[i];
    terms.push_back({{"exps", exps}, {"coeff", coeff_to_json(c)}});
  }
  Json j{{"vars", vars}, {"terms", terms}};
  if (s.valid_order() >= GradedSeries::kExact)
    j["valid_order"] = "exact";
  else
    j["valid_order"] = s.valid_order();
  return j;
}

inline GradedSeries series_from_json(const Json& j) {
  int order = GradedSeries::kExact;
  if (j.at("valid_order").is_number()) order = j.at("valid_order").get<int>();
  std::vector<VarId> vars;
  GradedSeries s = GradedSeries::zero(order);
  for (const auto& v : j.at("vars")) {
    VarId id = var_id(v.at("name").get<std::string>(), v.at("degree").get<int>());
    vars.push_back(id);
  }
  s = s.aligned_with(vars);
  for (const auto& t : j.at("terms")) {
    Mono m(vars.size(), 0);
    for (const auto& [key, val] : t.at("exps").items()) {
      auto id = VarTable::instance().find(key);
      if (!id) throw ParseError("series json: unknown variable '" + key + "'");
      auto it = std::find(vars.begin(), vars.end(), *id);
      if (it == vars.end()) throw ParseError("series json: variable not in list");
      m[static_cast<std::size_t>(it - vars.begin())] = val.get<std::uint32_t>();
    }
    s.add_term(std::move(m), coeff_from_json(t.at("coeff")));
  }
  return s;
}

}  // namespace cobord
