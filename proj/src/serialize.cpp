#include "locpl/serialize.hpp"

#include "locpl/errors.hpp"

namespace locpl {

namespace {

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw ParseError("expected a rational as a string");
  return parse_rational(j.get<std::string>());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing JSON field '") + name + "'");
  return j.at(name);
}

template <class T, class ToJson>
Json lincomb_json(const LinComb<T>& lc, const char* key, ToJson&& conv) {
  Json out = Json::array();
  for (const auto& [t, c] : lc) out.push_back(Json{{"coeff", rational_json(c)}, {key, conv(t)}});
  return out;
}

template <class T, class FromJson>
LinComb<T> lincomb_from(const Json& j, const char* key, FromJson&& conv) {
  if (!j.is_array()) throw ParseError("expected a JSON array of terms");
  LinComb<T> out;
  for (const auto& t : j) out.add(conv(field(t, key)), rational_from(field(t, "coeff")));
  return out;
}

Json poly_json(const Poly& p) { return p.str(); }

}  // namespace

Json to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back(l.str());
  return out;
}

Json to_json(const CompositionIndex& c) { return Json(c.parts); }

Json to_json(const ExtSeriesIndex& w) {
  Json x = Json::array();
  for (const auto& l : w.x) x.push_back(l.str());
  return Json{{"x", x}, {"n", w.n}};
}

Json to_json(const LinComb<Word>& lc) {
  return lincomb_json(lc, "word", [](const Word& w) { return to_json(w); });
}

Json to_json(const LinComb<CompositionIndex>& lc) {
  return lincomb_json(lc, "index", [](const CompositionIndex& c) { return to_json(c); });
}

Json to_json(const LinComb<ExtSeriesIndex>& lc) {
  return lincomb_json(lc, "index", [](const ExtSeriesIndex& w) { return to_json(w); });
}

Json to_json(const IntegralContext& ctx) {
  return Json{{"start", ctx.start.str()},
              {"end", ctx.end.str()},
              {"letters", to_json(ctx.letters)},
              {"variables", ctx.vars->names()}};
}

Json to_json(const PolylogExpr& e) {
  Json terms = Json::array();
  for (const auto& [w, f] : e.terms()) {
    Json t;
    auto subset = e.subset_of(w);
    t["subset"] = subset ? Json(*subset) : Json(nullptr);
    t["word"] = to_json(w);
    t["coeff"] = f.str();
    terms.push_back(std::move(t));
  }
  return Json{{"context", to_json(e.context())}, {"terms", terms}};
}

Json to_json(const IdentityReport& r) {
  Json out;
  out["kind"] = to_string(r.kind);
  out["relation"] = r.label;
  out["basis"] = r.basis;
  if (r.basis == "z-series") {
    out["series_variable"] = r.series_variable;
    out["series_order"] = r.series_order;
    out["formal_nonzero"] = r.formal_nonzero;
  }
  out["is_identity"] = r.is_identity;
  out["lhs_rational"] = r.lhs_rational.str();
  out["rhs_rational"] = r.rhs_rational.str();
  Json res = Json::array();
  for (const auto& x : r.residuals) res.push_back(Json{{"basis", x.basis}, {"value", x.value.str()}});
  out["residuals"] = res;
  return out;
}

Json to_json(const VarietyIdeal& ideal) {
  Json out;
  out["variables"] = ideal.vars->names();
  out["N"] = ideal.N;
  Json gens = Json::array();
  for (const auto& g : ideal.generators) gens.push_back(poly_json(g));
  out["generators"] = gens;
  Json prov = Json::array();
  for (const auto& p : ideal.provenance)
    prov.push_back(Json{{"relation", p.label},
                        {"kind", to_string(p.kind)},
                        {"N", p.N},
                        {"discrepancy_zero", p.discrepancy_zero},
                        {"generator", p.generator ? Json(*p.generator) : Json(nullptr)}});
  out["provenance"] = prov;
  Json excl = Json::array();
  for (const auto& x : ideal.excluded) excl.push_back(poly_json(x));
  out["excluded"] = excl;
  return out;
}

Json to_json(const SeriesValue& v) {
  return Json{{"value", double(v.value)},
              {"error_bound", double(v.error_bound)},
              {"M_used", v.M_used},
              {"converged", v.converged}};
}

Json to_json(const FiniteDiffReport& r) {
  return Json{{"symbolic", double(r.symbolic)},
              {"numeric", double(r.numeric)},
              {"rel_error", double(r.rel_error)},
              {"passed", r.passed}};
}

Word word_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("a word is a JSON array of letter strings");
  Word w;
  for (const auto& l : j) {
    if (!l.is_string()) throw ParseError("letters are JSON strings");
    w.letters.push_back(Letter::parse(l.get<std::string>()));
  }
  return w;
}

CompositionIndex composition_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("a composition is a JSON array of integers");
  return CompositionIndex(j.get<std::vector<int>>());
}

ExtSeriesIndex index_from_json(const Json& j) {
  const Json& x = field(j, "x");
  if (!x.is_array()) throw ParseError("index coordinates must be an array");
  std::vector<Letter> coords;
  for (const auto& l : x) coords.push_back(Letter::parse(l.get<std::string>()));
  return ExtSeriesIndex(std::move(coords), field(j, "n").get<std::vector<int>>());
}

LinComb<Word> word_lincomb_from_json(const Json& j) {
  return lincomb_from<Word>(j, "word", [](const Json& t) { return word_from_json(t); });
}

LinComb<CompositionIndex> composition_lincomb_from_json(const Json& j) {
  return lincomb_from<CompositionIndex>(j, "index", [](const Json& t) { return composition_from_json(t); });
}

LinComb<ExtSeriesIndex> index_lincomb_from_json(const Json& j) {
  return lincomb_from<ExtSeriesIndex>(j, "index", [](const Json& t) { return index_from_json(t); });
}

IntegralContext context_from_json(const Json& j) {
  VarsPtr vars = make_variables(field(j, "variables").get<std::vector<std::string>>());
  return IntegralContext(Letter::parse(field(j, "start").get<std::string>()),
                         Letter::parse(field(j, "end").get<std::string>()), word_from_json(field(j, "letters")),
                         vars);
}

PolylogExpr expr_from_json(const Json& j) {
  PolylogExpr e(context_from_json(field(j, "context")));
  for (const auto& t : field(j, "terms"))
    e.add(word_from_json(field(t, "word")), RatFunc::parse(e.context().vars, field(t, "coeff").get<std::string>()));
  return e;
}

VarietyIdeal ideal_from_json(const Json& j) {
  VarietyIdeal ideal;
  ideal.vars = make_variables(field(j, "variables").get<std::vector<std::string>>());
  ideal.N = field(j, "N").get<int>();
  auto poly = [&](const Json& s) {
    RatFunc f = RatFunc::parse(ideal.vars, s.get<std::string>());
    if (!f.den().is_constant()) throw ParseError("generator is not a polynomial");
    return f.num() * (1 / f.den().constant_value());
  };
  for (const auto& g : field(j, "generators")) ideal.generators.push_back(poly(g));
  if (j.contains("excluded"))
    for (const auto& x : j.at("excluded")) ideal.excluded.push_back(poly(x));
  if (j.contains("provenance"))
    for (const auto& p : j.at("provenance")) {
      ProvenanceEntry e{field(p, "relation").get<std::string>(), parse_relation_kind(field(p, "kind").get<std::string>()),
                        field(p, "N").get<int>(), field(p, "discrepancy_zero").get<bool>(), std::nullopt};
      if (!field(p, "generator").is_null()) e.generator = p.at("generator").get<std::size_t>();
      ideal.provenance.push_back(std::move(e));
    }
  return ideal;
}

}  // namespace locpl
