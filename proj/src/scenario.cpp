#include "microwrap/scenario.hpp"

#include "microwrap/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace microwrap {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Query::Op, std::string>> op_names = {
    {Query::Op::homw, "homw"},
    {Query::Op::comparison, "comparison"},
    {Query::Op::wrap_plus, "wrap+"},
    {Query::Op::wrap_minus, "wrap-"},
    {Query::Op::microstalk, "microstalk"},
    {Query::Op::ss, "ss"},
    {Query::Op::verify_equivalence, "verify-equivalence"},
    {Query::Op::corepresentability, "corepresentability"},
    {Query::Op::disk_annihilation, "disk-annihilation"},
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioError(where + ": " + what);
}

void expect_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        fail(where, "expected an object");
    for (const auto& [key, value] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            fail(where, "unknown key '" + key + "'");
}

const Json& member(const Json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing key '") + key + "'");
    return *it;
}

std::string text(const Json& j, const std::string& where) {
    if (!j.is_string())
        fail(where, "expected a string, got " + j.dump());
    return j.get<std::string>();
}

Rational rational(const Json& j, const std::string& where) {
    // bare integers are accepted, fractions must be strings
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        fail(where, "expected a rational literal \"p/q\", got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array())
        fail(where, "expected an array");
    return j;
}

int degree_key(const std::string& key, const std::string& where) {
    try {
        std::size_t used = 0;
        int d = std::stoi(key, &used);
        if (used == key.size())
            return d;
    } catch (const std::exception&) {
    }
    fail(where, "degree '" + key + "' is not an integer");
}

ChainComplex coefficient(const Json& j, const std::string& where) {
    expect_keys(j, where, {"ranks", "differentials"});
    std::map<int, std::size_t> ranks;
    for (const auto& [key, value] : member(j, where, "ranks").items()) {
        if (!value.is_number_unsigned())
            fail(where + ".ranks." + key, "rank must be a non-negative integer");
        ranks[degree_key(key, where + ".ranks")] = value.get<std::size_t>();
    }
    std::map<int, IntMatrix> diffs;
    if (auto it = j.find("differentials"); it != j.end())
        for (const auto& [key, value] : it->items()) {
            std::string at = where + ".differentials." + key;
            std::vector<std::vector<Integer>> rows;
            for (const auto& row : array(value, at)) {
                rows.emplace_back();
                for (const auto& entry : array(row, at)) {
                    if (entry.is_number_integer())
                        rows.back().emplace_back(entry.get<long>());
                    else if (Rational v; entry.is_string() && (v = rational(entry, at)).get_den() == 1)
                        rows.back().push_back(v.get_num());
                    else
                        fail(at, "matrix entries must be integers");
                }
            }
            int n = degree_key(key, where + ".differentials");
            auto rank_of = [&](int d) { return ranks.count(d) ? ranks[d] : std::size_t{0}; };
            try {
                diffs[n] = IntMatrix::from_rows(rows, rank_of(n));
            } catch (const Error& e) {
                fail(at, e.what());
            }
        }
    try {
        return ChainComplex::make(ranks, diffs);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Json coefficient_json(const ChainComplex& c) {
    Json ranks = Json::object(), diffs = Json::object();
    if (!c.is_zero())
        for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
            if (c.rank(n))
                ranks[std::to_string(n)] = c.rank(n);
            IntMatrix d = c.differential(n);
            bool nonzero = false;
            Json rows = Json::array();
            for (std::size_t r = 0; r < d.rows(); ++r) {
                Json row = Json::array();
                for (std::size_t k = 0; k < d.cols(); ++k) {
                    nonzero = nonzero || d(r, k) != 0;
                    if (d(r, k).fits_slong_p())
                        row.push_back(d(r, k).get_si());
                    else
                        row.push_back(to_string(d(r, k)));
                }
                rows.push_back(row);
            }
            if (nonzero)
                diffs[std::to_string(n)] = rows;
        }
    Json out = {{"ranks", ranks}};
    if (!diffs.empty())
        out["differentials"] = diffs;
    return out;
}

std::string endpoint_text(const Endpoint& e) {
    switch (e.kind) {
    case Endpoint::Kind::minus_infinity:
        return "-inf";
    case Endpoint::Kind::plus_infinity:
        return "+inf";
    default:
        return to_string(e.position);
    }
}

std::string interval_text(const IntervalGenerator& g) {
    if (g.full)
        return "S1";
    return (g.left.closed ? "[" : "(") + endpoint_text(g.left) + "," + endpoint_text(g.right) +
           (g.right.closed ? "]" : ")");
}

std::size_t vertex_index(const StratSpace& space, const Rational& x, const std::string& where) {
    auto v = space.vertex_at(x);
    if (!v || (!space.is_circle() && space.vertices()[*v] != x))
        fail(where, "position " + to_string(x) + " is not a vertex of the space");
    return *v;
}

Query::Op parse_op(const std::string& name, const std::string& where) {
    for (const auto& [op, n] : op_names)
        if (n == name)
            return op;
    fail(where, "unknown query '" + name + "'");
}

Codirection codirection(const Json& j, const std::string& where) {
    try {
        return parse_codirection(text(j, where));
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view source, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

std::string to_string(Query::Op op) {
    for (const auto& [o, name] : op_names)
        if (o == op)
            return name;
    return "?";
}

WrappedScene Scenario::scene() const {
    return WrappedScene::make(space, stops, catalog);
}

IntervalGenerator parse_interval(std::string_view s, ChainComplex coefficient) {
    std::string t;
    for (char c : s)
        if (c != ' ')
            t += c;
    if (t == "S1")
        return IntervalGenerator::whole_circle(std::move(coefficient));
    auto comma = t.find(',');
    if (t.size() < 5 || comma == std::string::npos || (t.front() != '(' && t.front() != '[') ||
        (t.back() != ')' && t.back() != ']'))
        throw ScenarioError("malformed interval '" + std::string(s) + "'; expected e.g. \"(1/4,1/2]\" or \"S1\"");
    auto end = [&](std::string_view e, bool closed, bool left) {
        if (e == "-inf" || e == "+inf" || e == "inf") {
            if ((e == "-inf") != left)
                throw ScenarioError("interval '" + std::string(s) + "' has an infinite end pointing inward");
            if (closed)
                throw ScenarioError("interval '" + std::string(s) + "' is closed at infinity");
            return left ? Endpoint::minus_infinity() : Endpoint::plus_infinity();
        }
        try {
            Rational x = parse_rational(e);
            return closed ? Endpoint::closed_at(x) : Endpoint::open(x);
        } catch (const Error& err) {
            throw ScenarioError("interval '" + std::string(s) + "': " + err.what());
        }
    };
    Endpoint l = end(std::string_view(t).substr(1, comma - 1), t.front() == '[', true);
    Endpoint r = end(std::string_view(t).substr(comma + 1, t.size() - comma - 2), t.back() == ']', false);
    try {
        return IntervalGenerator::make(l, r, std::move(coefficient));
    } catch (const WrapError& e) {
        throw ScenarioError("interval '" + std::string(s) + "': " + e.what());
    }
}

Scenario parse_scenario(std::string_view source) {
    Json j;
    try {
        j = Json::parse(source.begin(), source.end());
    } catch (const Json::parse_error& e) {
        auto [line, column] = line_column(source, e.byte ? e.byte - 1 : 0);
        std::string what = e.what();
        // strip the library's "[json.exception.parse_error.101] parse error at line x, column y: " prefix
        if (auto colon = what.find(": "); colon != std::string::npos)
            what = what.substr(colon + 2);
        throw ScenarioError("syntax error: " + what, line, column);
    }
    expect_keys(j, "scenario", {"space", "stops", "objects", "queries"});

    Scenario sc;
    const Json& sp = member(j, "scenario", "space");
    expect_keys(sp, "space", {"kind", "vertices", "perimeter"});
    std::string kind = text(member(sp, "space", "kind"), "space.kind");
    std::vector<Rational> vertices;
    const Json& vs = array(member(sp, "space", "vertices"), "space.vertices");
    for (std::size_t i = 0; i < vs.size(); ++i)
        vertices.push_back(rational(vs[i], "space.vertices[" + std::to_string(i) + "]"));
    try {
        if (kind == "line") {
            if (sp.contains("perimeter"))
                fail("space", "a line has no perimeter");
            sc.space = StratSpace::line(vertices);
        } else if (kind == "circle") {
            sc.space = StratSpace::circle(vertices, rational(member(sp, "space", "perimeter"), "space.perimeter"));
        } else {
            fail("space.kind", "expected \"line\" or \"circle\", got \"" + kind + "\"");
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        fail("space", e.what());
    }
    Ambient ambient = Ambient::of(sc.space);

    std::vector<ConormalPoint> stops;
    if (auto it = j.find("stops"); it != j.end()) {
        const Json& ss = array(*it, "stops");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            std::string at = "stops[" + std::to_string(i) + "]";
            expect_keys(ss[i], at, {"at", "codirection"});
            Rational x = rational(member(ss[i], at, "at"), at + ".at");
            stops.push_back({vertex_index(sc.space, x, at + ".at"),
                             codirection(member(ss[i], at, "codirection"), at + ".codirection")});
        }
    }
    sc.stops = StopSet(sc.space, stops);

    std::set<std::string> names;
    if (auto it = j.find("objects"); it != j.end()) {
        const Json& os = array(*it, "objects");
        for (std::size_t i = 0; i < os.size(); ++i) {
            std::string at = "objects[" + std::to_string(i) + "]";
            expect_keys(os[i], at, {"name", "generators"});
            std::string name = text(member(os[i], at, "name"), at + ".name");
            if (name.empty())
                fail(at + ".name", "empty object name");
            if (!names.insert(name).second)
                fail(at + ".name", "object '" + name + "' is defined twice");
            std::vector<IntervalGenerator> gens;
            const Json& gs = array(member(os[i], at, "generators"), at + ".generators");
            for (std::size_t k = 0; k < gs.size(); ++k) {
                std::string gat = at + ".generators[" + std::to_string(k) + "]";
                expect_keys(gs[k], gat, {"interval", "coefficient"});
                ChainComplex c = ChainComplex::unit();
                if (auto cit = gs[k].find("coefficient"); cit != gs[k].end())
                    c = coefficient(*cit, gat + ".coefficient");
                try {
                    gens.push_back(parse_interval(text(member(gs[k], gat, "interval"), gat + ".interval"), c));
                } catch (const ScenarioError& e) {
                    if (e.line())
                        throw;
                    fail(gat + ".interval", e.what());
                }
            }
            try {
                sc.catalog.emplace_back(name, IntervalSheaf::make(ambient, std::move(gens)));
            } catch (const Error& e) {
                fail(at, e.what());
            }
        }
    }

    if (auto it = j.find("queries"); it != j.end()) {
        const Json& qs = array(*it, "queries");
        for (std::size_t i = 0; i < qs.size(); ++i) {
            std::string at = "queries[" + std::to_string(i) + "]";
            Query q;
            q.op = parse_op(text(member(qs[i], at, "op"), at + ".op"), at + ".op");
            auto known = [&](const char* key) {
                std::string n = text(member(qs[i], at, key), at + "." + key);
                if (!names.count(n))
                    fail(at + "." + key, "unknown object '" + n + "'");
                return n;
            };
            auto point = [&] {
                q.at = rational(member(qs[i], at, "at"), at + ".at");
                q.codirection = codirection(member(qs[i], at, "codirection"), at + ".codirection");
            };
            switch (q.op) {
            case Query::Op::homw:
            case Query::Op::comparison:
                expect_keys(qs[i], at, {"op", "source", "target"});
                q.source = known("source");
                q.target = known("target");
                break;
            case Query::Op::wrap_plus:
            case Query::Op::wrap_minus:
            case Query::Op::ss:
                expect_keys(qs[i], at, {"op", "object"});
                q.object = known("object");
                break;
            case Query::Op::microstalk:
                expect_keys(qs[i], at, {"op", "object", "at", "codirection"});
                q.object = known("object");
                point();
                break;
            case Query::Op::verify_equivalence:
                expect_keys(qs[i], at, {"op"});
                break;
            case Query::Op::corepresentability:
            case Query::Op::disk_annihilation:
                expect_keys(qs[i], at, {"op", "at", "codirection"});
                point();
                vertex_index(sc.space, *q.at, at + ".at");
                break;
            }
            sc.queries.push_back(std::move(q));
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot read scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
    Json space = {{"kind", sc.space.is_circle() ? "circle" : "line"}, {"vertices", Json::array()}};
    for (const auto& x : sc.space.vertices())
        space["vertices"].push_back(to_string(x));
    if (sc.space.is_circle())
        space["perimeter"] = to_string(sc.space.perimeter());

    Json stops = Json::array();
    for (const auto& p : sc.stops.points())
        stops.push_back({{"at", to_string(sc.space.vertices()[p.vertex])}, {"codirection", to_string(p.codirection)}});

    Json objects = Json::array();
    for (const auto& [name, f] : sc.catalog) {
        Json gens = Json::array();
        for (const auto& g : f.generators) {
            Json gj = {{"interval", interval_text(g)}};
            if (!(g.coefficient == ChainComplex::unit()))
                gj["coefficient"] = coefficient_json(g.coefficient);
            gens.push_back(gj);
        }
        objects.push_back({{"name", name}, {"generators", gens}});
    }

    Json queries = Json::array();
    for (const auto& q : sc.queries) {
        Json qj = {{"op", to_string(q.op)}};
        switch (q.op) {
        case Query::Op::homw:
        case Query::Op::comparison:
            qj["source"] = q.source;
            qj["target"] = q.target;
            break;
        case Query::Op::wrap_plus:
        case Query::Op::wrap_minus:
        case Query::Op::ss:
            qj["object"] = q.object;
            break;
        case Query::Op::microstalk:
            qj["object"] = q.object;
            [[fallthrough]];
        case Query::Op::corepresentability:
        case Query::Op::disk_annihilation:
            qj["at"] = to_string(*q.at);
            qj["codirection"] = to_string(q.codirection);
            break;
        case Query::Op::verify_equivalence:
            break;
        }
        queries.push_back(qj);
    }
    Json j = {{"space", space}, {"stops", stops}, {"objects", objects}, {"queries", queries}};
    return j.dump(2) + "\n";
}

} // namespace microwrap
