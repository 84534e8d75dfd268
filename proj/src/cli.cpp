#include "locpl/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "locpl/errors.hpp"
#include "locpl/hyperlog.hpp"
#include "locpl/numeric.hpp"

namespace locpl {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void collect(const Letter& l, std::vector<std::string>& names) {
  for (const auto& f : l.factors())
    if (std::find(names.begin(), names.end(), f.first) == names.end()) names.push_back(f.first);
}

// Letter variables in order of appearance, then endpoint variables.
VarsPtr context_variables(const Word& w, const Letter& start, const Letter& end, const std::string& explicit_vars) {
  if (!explicit_vars.empty()) return make_variables(split_list(explicit_vars));
  std::vector<std::string> names, ends;
  collect(start, ends);
  collect(end, ends);
  for (const auto& l : w) collect(l, names);
  std::erase_if(names, [&](const std::string& n) { return std::find(ends.begin(), ends.end(), n) != ends.end(); });
  names.insert(names.end(), ends.begin(), ends.end());
  return make_variables(names);
}

std::map<std::string, Rational> parse_point(const std::string& text) {
  std::map<std::string, Rational> point;
  std::size_t offset = 0;
  for (const auto& item : split_list(text)) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value in point", offset);
    point[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    offset += item.size() + 1;
  }
  return point;
}

NumericPoint numeric_point(const std::map<std::string, Rational>& p) {
  NumericPoint out;
  for (const auto& [k, v] : p) out[k] = to_long_double(v);
  return out;
}

Real default_tolerance() {
  const char* env = std::getenv(kToleranceEnv);
  if (!env || !*env) return 1e-10L;
  char* endp = nullptr;
  Real t = std::strtold(env, &endp);
  if (endp == env || *endp != '\0' || !(t > 0)) throw ParseError(std::string(kToleranceEnv) + " must be a positive number");
  return t;
}

std::map<std::string, int> orders_map(const std::string& text) {
  return text.empty() ? std::map<std::string, int>{} : DerivationOrder::parse(text).orders();
}

void print_report(std::ostream& out, const IdentityReport& r) {
  out << "relation: " << r.label << " (" << to_string(r.kind) << ")\n";
  out << "basis: " << r.basis;
  if (r.basis == "z-series")
    out << " in " << r.series_variable << " below order " << r.series_order << " (" << r.formal_nonzero
        << " formally nonzero word residuals)";
  out << "\nis_identity: " << (r.is_identity ? "true" : "false") << "\n";
  out << "lhs_rational: " << r.lhs_rational.str() << "\n";
  out << "rhs_rational: " << r.rhs_rational.str() << "\n";
  out << "residuals:\n";
  for (const auto& x : r.residuals) out << "  " << x.basis << ": " << x.value.str() << "\n";
}

}  // namespace

RunConfig parse_run_config(const Json& j) {
  RunConfig c;
  if (!j.is_object()) throw ParseError("variety config must be a JSON object");
  if (j.contains("variables")) c.variables = j.at("variables").get<std::vector<std::string>>();
  if (j.contains("endpoints")) {
    const Json& e = j.at("endpoints");
    if (e.is_string() && e.get<std::string>() == "fixed") {
      c.start = Letter::zero();
      c.end = Letter::one();
    } else if (e.is_object()) {
      c.start = Letter::parse(e.at("start").get<std::string>());
      c.end = Letter::parse(e.at("end").get<std::string>());
    } else if (!(e.is_string() && e.get<std::string>() == "symbolic")) {
      throw ParseError("endpoints must be \"symbolic\", \"fixed\" or {\"start\", \"end\"}");
    }
  }
  if (j.contains("N")) c.N = j.at("N").get<int>();
  if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      RelationKind kind = parse_relation_kind(p.at("kind").get<std::string>());
      std::string a = p.at("A").get<std::string>(), b = p.at("B").get<std::string>();
      RelationSpec s = kind == RelationKind::Shuffle
                           ? RelationSpec::shuffle(Word::parse(a), Word::parse(b), c.N)
                           : RelationSpec::quasi_shuffle(ExtSeriesIndex::parse(a), ExtSeriesIndex::parse(b), c.N);
      if (p.contains("orders")) s.orders = p.at("orders").get<std::map<std::string, int>>();
      c.pairs.push_back(std::move(s));
    }
  } else {
    c.pairs = default_pairs(j.value("max_weight", 3));
  }
  for (auto& s : c.pairs) {
    s.start = c.start;
    s.end = c.end;
  }
  return c;
}

Json run_variety(const RunConfig& config) {
  VarsPtr vars = config.variables.empty() ? nullptr : make_variables(config.variables);
  VarietyIdeal ideal = variety_equations(config.pairs, config.N, vars);
  Json out = to_json(ideal);
  Json samples = Json::array();
  for (const auto& point : sample_points(ideal, config.samples, config.seed)) {
    Membership m = point_membership(ideal, point);
    Json p = Json::object();
    for (const auto& [k, v] : point) p[k] = to_string(v);
    Json values = Json::array();
    for (const auto& v : m.values) values.push_back(to_string(v));
    samples.push_back(Json{{"point", p}, {"member", m.member}, {"values", values}});
  }
  out["samples"] = samples;
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localized multiple polylogarithms: word products, KZ derivation, derived double shuffle"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "JSON output");

  // products
  std::string u, v;
  auto* sh = app.add_subcommand("shuffle", "shuffle product of two words, e.g. shuffle a,b c");
  auto* st = app.add_subcommand("stuffle", "quasi-shuffle of two compositions, e.g. stuffle 1 1,2");
  auto* est = app.add_subcommand("ext-stuffle", "coordinate carrying quasi-shuffle, e.g. ext-stuffle z:1:a z:1:b");
  for (auto* s : {sh, st, est}) {
    s->add_option("left", u, "first operand (may be empty)")->required();
    s->add_option("right", v, "second operand (may be empty)")->required();
    s->add_flag("--json", json, "JSON output");
  }

  // integral context shared by derive, rational-term, eval and fd-check
  std::string letters, start = "z0", end = "z1", vars_text, orders;
  int all_d = -1;
  bool rational_only = false;
  auto add_context = [&](CLI::App* s, bool letters_required) {
    auto* o = s->add_option("--letters", letters, "comma-separated letters a_1..a_n");
    if (letters_required) o->required();
    s->add_option("--start", start, "start point (default z0)");
    s->add_option("--end", end, "end point (default z1)");
    s->add_option("--vars", vars_text, "explicit ordered variable list");
    s->add_flag("--json", json, "JSON output");
  };
  auto* dv = app.add_subcommand("derive", "derivatives of I(start; letters; end) via the KZ equation");
  add_context(dv, true);
  auto* ord = dv->add_option("--orders", orders, "per-variable orders, e.g. a=2,b=1");
  dv->add_option("--all-d", all_d, "differentiate every letter variable N times")->excludes(ord);
  dv->add_flag("--rational-term", rational_only, "print only the purely rational term");

  auto* rt = app.add_subcommand("rational-term", "purely rational term of the N-th all-variable derivative");
  add_context(rt, true);
  int rt_n = 1;
  auto* rt_ord = rt->add_option("--orders", orders, "per-variable orders instead of --N");
  rt->add_option("--N", rt_n, "derivation depth (default 1)")->excludes(rt_ord);

  // relation checks
  std::string kind_text, a_text, b_text;
  int depth = 1, series_order = 6;
  bool rat_relation = false;
  auto* ck = app.add_subcommand("check", "verify a derived shuffle or quasi-shuffle relation");
  ck->add_option("kind", kind_text, "shuffle | stuffle")->required();
  ck->add_option("--A", a_text, "first word or extended index")->required();
  ck->add_option("--B", b_text, "second word or extended index")->required();
  ck->add_option("--d", depth, "derivatives per variable (default 1)");
  ck->add_option("--orders", orders, "per-variable orders overriding --d");
  ck->add_option("--start", start, "start point of shuffle relations (default z0)");
  ck->add_option("--end", end, "end point of shuffle relations (default z1)");
  ck->add_option("--series-order", series_order, "z-series precision for quasi-shuffle checks (default 6)");
  ck->add_flag("--rational", rat_relation, "compare purely rational terms only");
  ck->add_flag("--json", json, "JSON output");

  // variety
  std::string config_path, output_path;
  std::optional<int> var_n;
  std::optional<std::size_t> var_samples;
  std::optional<std::uint64_t> var_seed;
  auto* vy = app.add_subcommand("variety", "polynomial equations from rational-term discrepancies");
  vy->add_option("--config", config_path, "JSON run configuration (defaults when omitted)");
  vy->add_option("--output", output_path, "write the JSON result here instead of stdout");
  vy->add_option("--N", var_n, "derivation depth override");
  vy->add_option("--samples", var_samples, "number of rational sample points to search for");
  vy->add_option("--seed", var_seed, "sampler seed");

  // numeric
  std::string index_text, at_text, var_name;
  int truncation = 0, levels = 4;
  double ratio_bound = 0.5, tol = -1, step = 1e-2;
  auto* ev = app.add_subcommand("eval", "numeric value of Li(index) or I(start; letters; end)");
  add_context(ev, false);
  auto* idx = ev->add_option("--index", index_text, "extended index, e.g. z:2:a");
  ev->get_option("--letters")->excludes(idx);
  ev->add_option("--at", at_text, "point, e.g. a=3,z=1/2")->required();
  ev->add_option("--M", truncation, "truncation (default automatic)");
  ev->add_option("--ratio-bound", ratio_bound, "largest allowed series ratio (default 1/2)");
  ev->add_option("--tol", tol, "tail tolerance (default $LOCPL_TOLERANCE or 1e-10)");

  auto* fd = app.add_subcommand("fd-check", "compare kz_partial with an extrapolated finite difference");
  add_context(fd, true);
  fd->add_option("--orders", orders, "derivatives applied before the check");
  fd->add_option("--var", var_name, "variable of the checked derivative")->required();
  fd->add_option("--at", at_text, "point, e.g. a=17,b=7,z0=0,z1=1")->required();
  fd->add_option("--step", step, "initial step (default 1e-2)");
  fd->add_option("--levels", levels, "Richardson levels (default 4)");
  double fd_tol = 1e-6;
  fd->add_option("--tol", fd_tol, "relative tolerance (default 1e-6)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  out << std::setprecision(18);
  try {
    if (sh->parsed()) {
      auto r = shuffle(Word::parse(u), Word::parse(v));
      if (json) out << to_json(r).dump(2) << "\n"; else out << to_string(r) << "\n";
    } else if (st->parsed()) {
      auto r = quasi_shuffle(CompositionIndex::parse(u), CompositionIndex::parse(v));
      if (json) out << to_json(r).dump(2) << "\n"; else out << to_string(r) << "\n";
    } else if (est->parsed()) {
      auto parse_idx = [](const std::string& s) { return s.empty() ? ExtSeriesIndex() : ExtSeriesIndex::parse(s); };
      auto r = ext_quasi_shuffle(parse_idx(u), parse_idx(v));
      if (json) out << to_json(r).dump(2) << "\n"; else out << to_string(r) << "\n";
    } else if (dv->parsed() || rt->parsed()) {
      Word w = Word::parse(letters);
      Letter s = Letter::parse(start), e = Letter::parse(end);
      IntegralContext ctx(s, e, w, context_variables(w, s, e, vars_text));
      int n = dv->parsed() ? std::max(all_d, 0) : rt_n;
      DerivationOrder order =
          !orders.empty() ? DerivationOrder::parse(orders) : DerivationOrder::uniform(ctx.letter_variables(), n);
      PolylogExpr ex = derive(base_expr(ctx), order);
      if (rational_only || rt->parsed()) {
        if (json) out << Json{{"rational_term", rational_term(ex).str()}}.dump(2) << "\n";
        else out << rational_term(ex).str() << "\n";
      } else {
        if (json) out << to_json(ex).dump(2) << "\n"; else out << ex.str() << "\n";
      }
    } else if (ck->parsed()) {
      RelationKind kind = kind_text == "shuffle" ? RelationKind::Shuffle : parse_relation_kind(kind_text);
      RelationSpec spec = kind == RelationKind::Shuffle
                              ? RelationSpec::shuffle(Word::parse(a_text), Word::parse(b_text), depth)
                              : RelationSpec::quasi_shuffle(ExtSeriesIndex::parse(a_text),
                                                            ExtSeriesIndex::parse(b_text), depth);
      spec.start = Letter::parse(start);
      spec.end = Letter::parse(end);
      spec.orders = orders_map(orders);
      IdentityReport r;
      if (kind == RelationKind::Shuffle)
        r = rat_relation ? rat_shuffle_relation(spec) : check_derived_shuffle(spec);
      else
        r = rat_relation ? rat_quasi_shuffle_relation(spec) : check_derived_quasi_shuffle(spec, nullptr, nullptr, series_order);
      if (json) out << to_json(r).dump(2) << "\n"; else print_report(out, r);
      return r.is_identity ? kExitOk : kExitNotIdentity;
    } else if (vy->parsed()) {
      Json cfg = Json::object();
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ParseError("cannot read config file '" + config_path + "'");
        try {
          cfg = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw ParseError(std::string("config is not valid JSON: ") + e.what(), e.byte);
        }
      }
      RunConfig c = parse_run_config(cfg);
      if (var_n) {
        c.N = *var_n;
        for (auto& p : c.pairs) p.d = c.N;
      }
      if (var_samples) c.samples = *var_samples;
      if (var_seed) c.seed = *var_seed;
      if (!output_path.empty()) c.output = output_path;
      std::string text = run_variety(c).dump(2) + "\n";
      if (c.output.empty()) {
        out << text;
      } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw ParseError("cannot write output file '" + c.output + "'");
        f << text;
        out << "wrote " << c.output << "\n";
      }
    } else if (ev->parsed()) {
      SeriesParams p;
      p.truncation = truncation;
      p.ratio_bound = ratio_bound;
      p.tolerance = tol > 0 ? Real(tol) : default_tolerance();
      NumericPoint pt = numeric_point(parse_point(at_text));
      SeriesValue r;
      if (!index_text.empty()) {
        r = eval_li(ExtSeriesIndex::parse(index_text), pt, p);
      } else {
        r = eval_integral(Letter::parse(start), Word::parse(letters), Letter::parse(end), pt, p);
      }
      if (json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << "value: " << r.value << "\nerror_bound: " << r.error_bound << "\nM_used: " << r.M_used
            << "\nconverged: " << (r.converged ? "true" : "false") << "\n";
      }
    } else if (fd->parsed()) {
      Word w = Word::parse(letters);
      Letter s = Letter::parse(start), e = Letter::parse(end);
      IntegralContext ctx(s, e, w, context_variables(w, s, e, vars_text));
      PolylogExpr ex = derive(base_expr(ctx), orders.empty() ? DerivationOrder{} : DerivationOrder::parse(orders));
      SeriesParams p;
      p.tolerance = std::min(default_tolerance(), Real(1e-15L));
      FiniteDiffParams f{Real(step), levels, Real(fd_tol)};
      FiniteDiffReport r = finite_diff_check(ex, var_name, numeric_point(parse_point(at_text)), f, p);
      if (json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << "symbolic: " << r.symbolic << "\nnumeric: " << r.numeric << "\nrel_error: " << r.rel_error
            << "\npassed: " << (r.passed ? "true" : "false") << "\n";
      }
      return r.passed ? kExitOk : kExitNotIdentity;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace locpl
