#include "eqloc/json_io.hpp"

#include "eqloc/errors.hpp"

namespace eqloc {

using nlohmann::json;

namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

json partition_json(const Partition& p) { return p.parts(); }

Partition partition_from(const json& j) { return Partition(j.get<std::vector<unsigned>>()); }

}  // namespace

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms())
    terms.push_back({{"exp", t.mono.exponents(p.nvars())}, {"coef", to_string(t.coef)}});
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const json& j) {
  return guarded("polynomial", [&] {
    const auto nvars = j.at("nvars").get<std::size_t>();
    if (nvars > kMaxVars) throw InvalidArgument("too many variables");
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto exps = t.at("exp").get<std::vector<unsigned>>();
      if (exps.size() != nvars) throw InvalidArgument("exponent vector length differs from nvars");
      const auto& c = t.at("coef");
      const Rational coef = c.is_string() ? parse_rational(c.get<std::string>())
                                          : Rational(c.get<long>());
      terms.push_back({Monomial::from_exponents(exps), coef});
    }
    return MultiPoly::from_terms(nvars, std::move(terms));
  });
}

json to_json(const SchurTable& t) {
  if (t.alphabets.empty() || t.alphabets.size() > 2)
    throw InvalidArgument("schur table JSON supports one or two alphabets");
  json alphabets = json::array();
  json negated = json::array();
  for (const auto& a : t.alphabets) {
    json vars = json::array();
    for (auto v : a.vars) vars.push_back(v + 1);
    alphabets.push_back(std::move(vars));
    negated.push_back(a.negated);
  }
  json entries = json::array();
  for (const auto& [key, coef] : t.entries) {
    json e = {{"I", partition_json(key[0])}};
    if (key.size() > 1) e["J"] = partition_json(key[1]);
    e["coef"] = to_string(coef);
    entries.push_back(std::move(e));
  }
  return {{"nvars", t.nvars}, {"alphabets", std::move(alphabets)}, {"negated", std::move(negated)},
          {"entries", std::move(entries)}};
}

SchurTable schur_table_from_json(const json& j) {
  return guarded("schur table", [&] {
    SchurTable t;
    const auto& alphabets = j.at("alphabets");
    if (alphabets.empty() || alphabets.size() > 2)
      throw InvalidArgument("schur table JSON supports one or two alphabets");
    std::size_t max_var = 0;
    for (std::size_t a = 0; a < alphabets.size(); ++a) {
      Alphabet alpha;
      for (auto v : alphabets[a].get<std::vector<std::size_t>>()) {
        if (v == 0) throw InvalidArgument("alphabet variables are 1-based");
        alpha.vars.push_back(v - 1);
        max_var = std::max(max_var, v);
      }
      if (j.contains("negated")) alpha.negated = j.at("negated").at(a).get<bool>();
      t.alphabets.push_back(std::move(alpha));
    }
    t.nvars = j.contains("nvars") ? j.at("nvars").get<std::size_t>() : max_var;
    for (const auto& e : j.at("entries")) {
      std::vector<Partition> key{partition_from(e.at("I"))};
      if (t.alphabets.size() > 1) key.push_back(partition_from(e.at("J")));
      t.entries[std::move(key)] += parse_rational(e.at("coef").get<std::string>());
    }
    return t;
  });
}

json to_json(const LocalClassTable& t) {
  json classes = json::array();
  for (const auto& [point, poly] : t.classes)
    classes.push_back({{"point", point}, {"poly", to_json(poly)}});
  return {{"grass", {t.m, t.n}}, {"classes", std::move(classes)}};
}

LocalClassTable local_table_from_json(const json& j) {
  return guarded("local class table", [&] {
    LocalClassTable t;
    const auto grass = j.at("grass").get<std::vector<std::size_t>>();
    if (grass.size() != 2) throw InvalidArgument("grass must be [m, n]");
    t.m = grass[0];
    t.n = grass[1];
    for (const auto& c : j.at("classes")) {
      const GrassPoint p = GrassPoint::make(t.m, t.n, c.at("point").get<std::vector<std::size_t>>());
      t.set(p, poly_from_json(c.at("poly")));
    }
    return t;
  });
}

}  // namespace eqloc
