#include "random_objects.hpp"

#include "microwrap/errors.hpp"
#include "microwrap/report.hpp"

#include <doctest.h>

#include <random>

using namespace microwrap;

namespace {

const std::string two_stops = std::string(MICROWRAP_SCENARIO_DIR) + "/two_stops.json";

const char* minimal = R"js({
  "space": {"kind": "line", "vertices": ["0", "1"]},
  "stops": [{"at": "0", "codirection": "-"}, {"at": "1", "codirection": "+"}],
  "objects": [{"name": "U", "generators": [{"interval": "(0,1)"}]}],
  "queries": []
})js";

std::string with_queries(const std::string& queries) {
    std::string s = minimal;
    s.replace(s.find("\"queries\": []"), 13, "\"queries\": " + queries);
    return s;
}

ScenarioError parse_error(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e;
    }
    FAIL("expected a scenario error");
    return ScenarioError("");
}

Rational q(long p, long d = 1) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

Scenario random_scenario(std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1), pick(0, 8);
    Scenario sc;
    bool circle = coin(rng);
    std::vector<Rational> xs = {0, q(1, 2), 1};
    sc.space = circle ? StratSpace::circle({0, q(1, 2), 1}, 2) : StratSpace::line(xs);
    std::vector<ConormalPoint> pts;
    for (std::size_t v = 0; v < 3; ++v)
        for (Codirection c : {Codirection::plus, Codirection::minus})
            if (coin(rng))
                pts.push_back({v, c});
    sc.stops = StopSet(sc.space, pts);
    std::vector<Rational> grid;
    for (long k = 0; k < 8; ++k)
        grid.push_back(q(k - (circle ? 0 : 2), 4));
    for (int i = 0; i < 3; ++i)
        sc.catalog.emplace_back("F" + std::to_string(i),
                                oracle::random_interval_sheaf(rng, Ambient::of(sc.space), grid, 3));
    for (int i = 0; i < 6; ++i) {
        Query qu;
        qu.op = static_cast<Query::Op>(pick(rng));
        qu.source = "F0";
        qu.target = "F1";
        if (qu.op == Query::Op::homw || qu.op == Query::Op::comparison) {
        } else {
            qu.source.clear();
            qu.target.clear();
        }
        if (qu.op == Query::Op::wrap_plus || qu.op == Query::Op::wrap_minus || qu.op == Query::Op::ss ||
            qu.op == Query::Op::microstalk)
            qu.object = "F2";
        if (qu.op == Query::Op::microstalk || qu.op == Query::Op::corepresentability ||
            qu.op == Query::Op::disk_annihilation) {
            qu.at = xs[static_cast<std::size_t>(pick(rng)) % 3];
            qu.codirection = coin(rng) ? Codirection::plus : Codirection::minus;
        }
        sc.queries.push_back(qu);
    }
    return sc;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("the bundled two-stop scenario") {
    Scenario sc = load_scenario(two_stops);
    CHECK(sc.catalog.size() == 3);
    CHECK(sc.stops.size() == 2);
    CHECK(sc.space.vertices() == std::vector<Rational>{0, 1});

    Report r = run_scenario(sc);
    CHECK(report_ok(r));
    const Report* wrap = nullptr;
    const Report* equivalence = nullptr;
    const Report* stalk = nullptr;
    for (const auto& e : r["results"]) {
        CHECK(e["status"] == "ok");
        if (e["query"]["op"] == "wrap+")
            wrap = &e;
        if (e["query"]["op"] == "verify-equivalence")
            equivalence = &e;
        if (e["query"]["op"] == "microstalk")
            stalk = &e;
    }
    REQUIRE(wrap);
    CHECK((*wrap)["result"] == "(0,1)");
    CHECK((*wrap)["trace"]["events"]["rest"] == 2);
    CHECK((*wrap)["trace"]["events"]["crossing"] == 0);
    REQUIRE(equivalence);
    CHECK((*equivalence)["agree"] == true);
    for (const auto& h : (*equivalence)["homs"])
        CHECK(h["agree"] == true);
    REQUIRE(stalk);
    CHECK((*stalk)["profile"] == Report::parse(R"js({"1": {"free": 1, "torsion": []}})js"));
}

TEST_CASE("queries on a minimal scene") {
    Scenario sc = parse_scenario(with_queries(R"js([
        {"op": "microstalk", "object": "U", "at": "0", "codirection": "-"},
        {"op": "corepresentability", "at": "0", "codirection": "-"},
        {"op": "ss", "object": "U"}
    ])js"));
    Report r = run_scenario(sc);
    CHECK(r["results"][0]["profile"] == profile_json(HomologyProfile({{1, HomologyGroup{1, {}}}})));
    CHECK(r["results"][1]["entries"][0]["agree"] == true);
    CHECK(r["results"][1]["entries"][0]["hom"] == r["results"][0]["profile"]);
    CHECK(r["results"][2]["in_sh_lambda"] == true);
    CHECK(report_ok(r));
}

TEST_CASE("traces on request") {
    Scenario sc = load_scenario(two_stops);
    Report plain = run_scenario(sc);
    Report traced = run_scenario(sc, {.trace = true});
    const Report& steps = traced["results"][0]["trace"]["steps"];
    REQUIRE(steps.size() == 2);
    CHECK(steps[0]["state"] == "(0,3/4)");
    CHECK(steps[1]["state"] == "(0,1)");
    CHECK_FALSE(plain["results"][0]["trace"].contains("steps"));
}

TEST_CASE("empty catalog") {
    Scenario sc = parse_scenario(R"js({"space": {"kind": "line", "vertices": []}})js");
    CHECK(sc.catalog.empty());
    CHECK(sc.queries.empty());
    Report r = run_scenario(sc);
    CHECK(r["results"].empty());
    CHECK(report_ok(r));
}

TEST_CASE("scenario errors") {
    SUBCASE("syntax error position") {
        ScenarioError e = parse_error("{\n  \"space\": {\"kind\": \"line\",\n    \"vertices\": [0 1]}}");
        CHECK(e.line() == 3);
        CHECK(e.column() == 20);
    }
    SUBCASE("stop off the vertices names the position") {
        ScenarioError e =
            parse_error(R"js({"space": {"kind": "line", "vertices": ["0"]}, "stops": [{"at": "1/3", "codirection": "+"}]})js");
        CHECK(std::string(e.what()).find("1/3") != std::string::npos);
        CHECK(std::string(e.what()).find("stops[0].at") != std::string::npos);
    }
    SUBCASE("non-rational position") {
        ScenarioError e = parse_error(R"js({"space": {"kind": "line", "vertices": ["0.5"]}})js");
        CHECK(std::string(e.what()).find("space.vertices[0]") != std::string::npos);
        CHECK_THROWS_AS(parse_scenario(R"js({"space": {"kind": "line", "vertices": [0.5]}})js"), ScenarioError);
    }
    SUBCASE("unknown names") {
        ScenarioError e = parse_error(with_queries(R"js([{"op": "homw", "source": "U", "target": "V"}])js"));
        CHECK(std::string(e.what()).find("unknown object 'V'") != std::string::npos);
        CHECK_THROWS_AS(parse_scenario(with_queries(R"js([{"op": "wrap"}])js")), ScenarioError);
        CHECK_THROWS_AS(parse_scenario(with_queries(R"js([{"op": "ss", "object": "U", "extra": 1}])js")), ScenarioError);
    }
    SUBCASE("duplicate names and bad intervals") {
        CHECK_THROWS_AS(parse_scenario(R"js({"space": {"kind": "line", "vertices": []}, "objects": [
            {"name": "A", "generators": []}, {"name": "A", "generators": []}]})js"),
                        ScenarioError);
        for (const char* bad : {"(1,0)", "(0,0)", "[-inf,1)", "(1,-inf)", "0,1", "S1"}) {
            std::string text = std::string(R"js({"space": {"kind": "line", "vertices": []}, "objects": [
                {"name": "A", "generators": [{"interval": ")js") + bad + "\"}]}]}";
            CHECK_THROWS_AS(parse_scenario(text), ScenarioError);
        }
    }
    SUBCASE("coefficients are validated") {
        CHECK_THROWS_AS(parse_scenario(R"js({"space": {"kind": "line", "vertices": []}, "objects": [
            {"name": "A", "generators": [{"interval": "(0,1)",
              "coefficient": {"ranks": {"0": 1, "1": 1, "2": 1}, "differentials": {"0": [[1]], "1": [[1]]}}}]}]})js"),
                        ScenarioError);
    }
}

TEST_CASE("intervals") {
    CHECK(parse_interval("(1/4, 1/2]") ==
          IntervalGenerator::make(Endpoint::open(q(1, 4)), Endpoint::closed_at(q(1, 2))));
    CHECK(parse_interval("(-inf,0]") == IntervalGenerator::make(Endpoint::minus_infinity(), Endpoint::closed_at(0)));
    CHECK(parse_interval("[2,+inf)") == IntervalGenerator::make(Endpoint::closed_at(2), Endpoint::plus_infinity()));
    CHECK(parse_interval("[1/2,1/2]").is_skyscraper());
    CHECK(parse_interval("S1").full);
}

TEST_CASE("torsion coefficients survive a run") {
    Scenario sc = parse_scenario(R"js({
      "space": {"kind": "line", "vertices": ["0", "1"]},
      "stops": [{"at": "0", "codirection": "-"}, {"at": "1", "codirection": "+"}],
      "objects": [{"name": "T", "generators": [{"interval": "(0,1)",
                   "coefficient": {"ranks": {"-1": 1, "0": 1}, "differentials": {"-1": [[2]]}}}]}],
      "queries": [{"op": "homw", "source": "T", "target": "T"}]
    })js");
    Report r = run_scenario(sc);
    // End(Z/2) = Z/2 in degree 0 and Ext^1(Z/2, Z/2) = Z/2 in degree 1
    CHECK(r["results"][0]["profile"] ==
          Report::parse(R"js({"0": {"free": 0, "torsion": [2]}, "1": {"free": 0, "torsion": [2]}})js"));
}

TEST_CASE("round trip and determinism") {
    std::mt19937 rng(41);
    for (int i = 0; i < 40; ++i) {
        Scenario sc = random_scenario(rng);
        std::string text = serialize_scenario(sc);
        Scenario back = parse_scenario(text);
        CHECK(back == sc);
        CHECK(serialize_scenario(back) == text);
        CHECK(render_json(run_scenario(sc)) == render_json(run_scenario(back)));
    }
    Scenario sc = load_scenario(two_stops);
    CHECK(render_text(run_scenario(sc, {.trace = true, .check = true})) ==
          render_text(run_scenario(sc, {.trace = true, .check = true})));
}

TEST_CASE("a failing query leaves the others alone") {
    Scenario good = parse_scenario(with_queries(R"js([
        {"op": "wrap+", "object": "U"},
        {"op": "homw", "source": "U", "target": "U"}
    ])js"));
    Scenario bad = parse_scenario(with_queries(R"js([
        {"op": "wrap+", "object": "U"},
        {"op": "corepresentability", "at": "1", "codirection": "-"},
        {"op": "homw", "source": "U", "target": "U"}
    ])js"));
    Report a = run_scenario(good);
    Report b = run_scenario(bad);
    CHECK(b["results"][1]["status"] == "error");
    CHECK(a["results"][0] == b["results"][0]);
    CHECK(a["results"][1] == b["results"][2]);
    CHECK(b["summary"]["errors"] == 1);
    CHECK_FALSE(report_ok(b));
}

TEST_CASE("built-in suites") {
    Report r = run_scenario(load_scenario(two_stops), {.check = true});
    REQUIRE(r["checks"].size() == 5);
    for (const auto& c : r["checks"]) {
        CHECK_MESSAGE(c["passed"] == true, c.dump());
        CHECK(c["cases"].get<std::size_t>() > 0);
    }
}

TEST_CASE("convention ledger") {
    CHECK(convention_ledger_hash().size() == 16);
    Report r = run_scenario(load_scenario(two_stops));
    CHECK(r["conventions_hash"] == convention_ledger_hash());
    CHECK(r["conventions"].size() == convention_ledger().size());
}

}  // TEST_SUITE
