#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "locpl/cli.hpp"

using namespace locpl;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "locpl");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("words and combinations round-trip") {
    auto lc = shuffle(Word::parse("a*b,z^-1"), Word::parse("c"));
    CHECK(word_lincomb_from_json(Json::parse(to_json(lc).dump())) == lc);
    auto st = quasi_shuffle(CompositionIndex({1, 2}), CompositionIndex({3}));
    CHECK(composition_lincomb_from_json(to_json(st)) == st);
    auto ext = ext_quasi_shuffle(ExtSeriesIndex::parse("z:1:a"), ExtSeriesIndex::parse("z:2:b:1:c"));
    CHECK(index_lincomb_from_json(to_json(ext)) == ext);
  }

  TEST_CASE("expressions round-trip") {
    auto vars = make_variables({"a", "b", "z0", "z1"});
    IntegralContext ctx(Letter::parse("z0"), Letter::parse("z1"), Word::parse("a,b"), vars);
    PolylogExpr e = derive(base_expr(ctx), DerivationOrder::parse("a=2,b=1"));
    Json j = to_json(e);
    PolylogExpr back = expr_from_json(Json::parse(j.dump()));
    CHECK(back.str() == e.str());
    CHECK(to_json(back).dump() == j.dump());
    CHECK(j["terms"][0]["subset"].is_array());
  }

  TEST_CASE("ideals round-trip") {
    VarietyIdeal ideal = variety_equations(default_pairs(2), 1, nullptr);
    Json j = to_json(ideal);
    CHECK(to_json(ideal_from_json(j)).dump() == j.dump());
  }

  TEST_CASE("malformed JSON input") {
    CHECK_THROWS_AS(word_from_json(Json::parse("{\"x\": 1}")), ParseError);
    CHECK_THROWS_AS(index_from_json(Json::parse("{\"n\": [1]}")), ParseError);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("products") {
    Run r = run({"shuffle", "a,b", "c"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "(a,b,c) + (a,c,b) + (c,a,b)\n");
    CHECK(run({"stuffle", "1", "1"}).out == "2*(1,1) + (2)\n");
    CHECK(run({"shuffle", "", "a,b"}).out == "(a,b)\n");
    CHECK(run({"stuffle", "2,1", ""}).out == "(2,1)\n");
    Run j = run({"ext-stuffle", "z:1:a", "z:1:b", "--json"});
    CHECK(Json::parse(j.out).size() == 3);
  }

  TEST_CASE("derive and rational-term") {
    Run d = run({"derive", "--letters", "a,b", "--start", "z0", "--end", "z1", "--orders", "a=1,b=1"});
    CHECK(d.code == kExitOk);
    CHECK(d.out.find("I(a)") != std::string::npos);
    Run rt = run({"derive", "--letters", "a,b", "--orders", "a=1,b=1", "--rational-term"});
    Run rt2 = run({"rational-term", "--letters", "a,b", "--N", "1"});
    CHECK(rt.out == rt2.out);
    Json full = Json::parse(run({"derive", "--letters", "a,b", "--all-d", "1", "--json"}).out);
    bool found = false;
    for (const auto& t : full["terms"])
      if (t["word"].empty()) found = rt.out == t["coeff"].get<std::string>() + "\n";
    CHECK(found);
    Run echo = run({"derive", "--letters", "a,b"});
    CHECK(echo.out == "[1]*I(a,b)\n");
  }

  TEST_CASE("check exit codes") {
    Run s = run({"check", "shuffle", "--A", "a", "--B", "b", "--d", "1"});
    CHECK(s.code == kExitOk);
    CHECK(s.out.find("is_identity: true") != std::string::npos);
    Run q = run({"check", "stuffle", "--A", "z:1:a", "--B", "z:1:b", "--d", "1", "--json"});
    CHECK(q.code == kExitOk);
    Json j = Json::parse(q.out);
    CHECK(j["is_identity"] == true);
    CHECK(j.contains("lhs_rational"));
  }

  TEST_CASE("eval and fd-check") {
    Run e = run({"eval", "--index", "z:2:a", "--at", "z=1,a=2", "--json"});
    CHECK(e.code == kExitOk);
    CHECK(Json::parse(e.out)["converged"] == true);
    Run bad = run({"eval", "--index", "z:1:a", "--at", "z=3,a=1"});
    CHECK(bad.code == kExitDomain);
    Run fd = run({"fd-check", "--letters", "a,b", "--var", "a", "--at", "a=17,b=7,z0=0,z1=1"});
    CHECK(fd.code == kExitOk);
  }

  TEST_CASE("usage and parse errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"shuffle", "a"}).code == kExitUsage);
    CHECK(run({"shuffle", "a+", "b"}).code == kExitUsage);
    CHECK(run({"derive", "--letters", "a", "--orders", "a=x"}).code == kExitUsage);
    CHECK(run({"eval", "--index", "z:1:a", "--at", "z"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("tolerance from the environment") {
    setenv(kToleranceEnv, "1e-14", 1);
    Json j = Json::parse(run({"eval", "--index", "z:2:a", "--at", "z=1,a=2", "--json"}).out);
    CHECK(j["error_bound"].get<double>() <= 1e-14);
    setenv(kToleranceEnv, "abc", 1);
    CHECK(run({"eval", "--index", "z:2:a", "--at", "z=1,a=2"}).code == kExitUsage);
    unsetenv(kToleranceEnv);
  }

  TEST_CASE("variety runs are deterministic") {
    const char* cfg = "locpl_test_variety.json";
    const char* out1 = "locpl_test_variety_1.json";
    const char* out2 = "locpl_test_variety_2.json";
    {
      std::ofstream f(cfg);
      f << R"({"endpoints": "symbolic", "N": 1,
               "pairs": [{"kind": "shuffle", "A": "a", "B": "b"},
                         {"kind": "stuffle", "A": "z:1:a", "B": "z:1:b"}],
               "samples": 2, "seed": 3})";
    }
    CHECK(run({"variety", "--config", cfg, "--output", out1}).code == kExitOk);
    CHECK(run({"variety", "--config", cfg, "--output", out2}).code == kExitOk);
    auto slurp = [](const char* p) {
      std::ifstream f(p);
      return std::string(std::istreambuf_iterator<char>(f), {});
    };
    std::string a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
    Json j = Json::parse(a);
    CHECK(j["provenance"].size() == 2);
    for (const auto& s : j["samples"]) CHECK(s["member"] == true);
    CHECK(run({"variety", "--config", "does_not_exist.json"}).code == kExitUsage);
    std::remove(cfg);
    std::remove(out1);
    std::remove(out2);
  }

  TEST_CASE("run config parsing") {
    RunConfig c = parse_run_config(Json::parse(R"({"endpoints": "fixed", "N": 2, "max_weight": 2})"));
    CHECK(c.N == 2);
    CHECK(c.start.is_zero());
    CHECK(c.end.is_one());
    CHECK_FALSE(c.pairs.empty());
    for (const auto& p : c.pairs) CHECK(p.start.is_zero());
    CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"endpoints": "sideways"})")), ParseError);
  }
}
