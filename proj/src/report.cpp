#include "microwrap/report.hpp"

#include "microwrap/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#ifndef MICROWRAP_VERSION
#define MICROWRAP_VERSION "0.0.0"
#endif

namespace microwrap {

namespace {

Report point_json(const Rational& x, Codirection c) {
    return {{"at", to_string(x)}, {"codirection", to_string(c)}};
}

Report query_json(const Query& q) {
    Report j = {{"op", to_string(q.op)}};
    if (!q.source.empty())
        j["source"] = q.source;
    if (!q.target.empty())
        j["target"] = q.target;
    if (!q.object.empty())
        j["object"] = q.object;
    if (q.at) {
        j["at"] = to_string(*q.at);
        j["codirection"] = to_string(q.codirection);
    }
    return j;
}

Report trace_json(const WrapTrace& t, bool full) {
    Report events = {{"rest", t.count(WrapEvent::Kind::rest)},
                     {"crossing", t.count(WrapEvent::Kind::crossing)},
                     {"escape", t.count(WrapEvent::Kind::escape)}};
    Report j = {{"events", events}};
    if (full) {
        Report steps = Report::array();
        for (const auto& s : t.steps) {
            Report step = {{"event", s.event.describe()}, {"state", s.state.to_string()}};
            if (s.event.elapsed)
                step["elapsed"] = to_string(*s.event.elapsed);
            steps.push_back(step);
        }
        j["initial"] = t.initial.to_string();
        j["steps"] = steps;
    }
    return j;
}

ConormalPoint scene_point(const WrappedScene& scene, const Query& q) {
    auto v = scene.space().vertex_at(*q.at);
    if (!v)
        throw WrapError(WrapError::Kind::invalid_input, "position " + to_string(*q.at) + " is not a scene vertex");
    return {*v, q.codirection};
}

Report run_query(const WrappedScene& scene, const Query& q, const RunOptions& options) {
    Report r;
    switch (q.op) {
    case Query::Op::homw:
        r["profile"] = profile_json(homology(hom_wrapped(scene, scene.object(q.source), scene.object(q.target))));
        break;
    case Query::Op::comparison:
        r["profile"] = profile_json(homology(comparison_hom(scene, scene.object(q.source), scene.object(q.target))));
        break;
    case Query::Op::wrap_plus:
    case Query::Op::wrap_minus: {
        const IntervalSheaf& f = scene.object(q.object);
        WrapResult w = q.op == Query::Op::wrap_plus ? wrap_plus(f, scene.wrap_stops()) : wrap_minus(f, scene.wrap_stops());
        r["result"] = w.sheaf.to_string();
        r["trace"] = trace_json(w.trace, options.trace);
        break;
    }
    case Query::Op::microstalk: {
        const IntervalSheaf& f = scene.object(q.object);
        std::vector<Rational> xs = scene.space().vertices();
        for (const auto& x : positions(f))
            xs.push_back(x);
        xs.push_back(scene.space().normalize(*q.at));
        StratSpace s = adapted_space(scene.ambient(), xs);
        r["profile"] = profile_json(homology(microstalk(realize(f, s), {*s.vertex_at(*q.at), q.codirection})));
        break;
    }
    case Query::Op::ss: {
        const IntervalSheaf& f = scene.object(q.object);
        Report pts = Report::array();
        bool inside = true;
        for (const auto& p : ss_points(f)) {
            pts.push_back(point_json(p.position, p.codirection));
            inside = inside && scene.wrap_stops().contains(p.position, p.codirection);
        }
        r["points"] = pts;
        r["in_sh_lambda"] = inside;
        break;
    }
    case Query::Op::verify_equivalence: {
        EquivalenceReport e = verify_equivalence(scene);
        Report homs = Report::array();
        for (const auto& h : e.homs)
            homs.push_back({{"source", h.source},
                            {"target", h.target},
                            {"wrapped", profile_json(h.wrapped)},
                            {"comparison", profile_json(h.comparison)},
                            {"agree", h.agree}});
        Report gens = Report::array();
        for (const auto& g : e.generators)
            gens.push_back({{"name", g.name},
                            {"candidate", g.candidate.to_string()},
                            {"wrapped", g.wrapped.to_string()},
                            {"in_sh_lambda", g.in_sh_lambda},
                            {"corepresents", g.corepresents}});
        Report fixed = Report::object();
        for (const auto& [name, ok] : e.fixed)
            fixed[name] = ok;
        r["homs"] = homs;
        r["generators"] = gens;
        r["fixed"] = fixed;
        r["skipped"] = e.skipped;
        r["agree"] = e.all_agree();
        break;
    }
    case Query::Op::corepresentability: {
        CorepresentabilityReport c = corepresentability_check(scene, scene_point(scene, q));
        Report entries = Report::array();
        for (const auto& e : c.entries)
            entries.push_back({{"object", e.object},
                               {"hom", profile_json(e.hom)},
                               {"microstalk", profile_json(e.microstalk)},
                               {"agree", e.agree}});
        r["wrapped_disk"] = c.wrapped_disk.to_string();
        r["entries"] = entries;
        r["agree"] = c.all_agree();
        break;
    }
    case Query::Op::disk_annihilation: {
        DiskAnnihilationReport d = disk_annihilation_check(scene, scene_point(scene, q));
        r["annihilated"] = d.annihilated;
        r["hom_vanishes"] = d.hom_vanishes;
        r["trace"] = trace_json(d.trace, options.trace);
        r["agree"] = d.agree();
        break;
    }
    }
    return r;
}

// --- built-in suites ---------------------------------------------------------

struct Tally {
    explicit Tally(std::string name) : suite(std::move(name)) {}

    std::string suite;
    std::size_t cases = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;

    void record(bool ok, const std::string& what) {
        ++cases;
        if (!ok)
            failures.push_back(what);
    }
    Report json() const {
        return {{"suite", suite}, {"cases", cases}, {"skipped", skipped}, {"failures", failures},
                {"passed", failures.empty()}};
    }
};

template <class F>
void guarded(Tally& t, F&& body) {
    try {
        body();
    } catch (const WrapError& e) {
        if (e.kind() != WrapError::Kind::unsupported_wrap)
            throw;
        ++t.skipped;
    }
}

HomologyProfile hom_between(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f) {
    StratSpace s = scene.common_space({&g, &f});
    return homology(rhom(realize(g, s), realize(f, s)));
}

Report run_checks(const WrappedScene& scene) {
    const WrapStops& stops = scene.wrap_stops();
    std::vector<IntervalSheaf> family = stop_adapted_family(stops);
    Report out = Report::array();

    Tally adj{"adjunction"};
    for (const auto& [name, f] : scene.catalog())
        for (const auto& g : family)
            guarded(adj, [&] {
                IntervalSheaf plus = wrap_plus(f, stops).sheaf;
                IntervalSheaf minus = wrap_minus(f, stops).sheaf;
                adj.record(hom_between(scene, plus, g) == hom_between(scene, f, g),
                           "Hom(wrap+ " + name + ", " + g.to_string() + ")");
                adj.record(hom_between(scene, g, minus) == hom_between(scene, g, f),
                           "Hom(" + g.to_string() + ", wrap- " + name + ")");
            });
    out.push_back(adj.json());

    Tally eq{"equivalence"};
    guarded(eq, [&] {
        EquivalenceReport e = verify_equivalence(scene);
        for (const auto& h : e.homs)
            eq.record(h.agree, h.source + " -> " + h.target);
        for (const auto& g : e.generators)
            eq.record(g.in_sh_lambda && g.corepresents, g.name);
        for (const auto& [name, ok] : e.fixed)
            eq.record(ok, "wrap+ fixes " + name);
        eq.skipped += e.skipped.size();
    });
    out.push_back(eq.json());

    // catalog plus the stop-adapted family, under distinct names
    std::vector<std::pair<std::string, IntervalSheaf>> objects;
    for (const auto& [name, f] : scene.catalog())
        objects.emplace_back(name, f);
    for (const auto& g : family)
        objects.emplace_back("#" + std::to_string(objects.size()) + " " + g.to_string(), g);
    WrappedScene extended = WrappedScene::make(scene.space(), scene.stops(), objects);
    Tally corep{"corepresentability"};
    for (const auto& p : scene.stops().points())
        guarded(corep, [&] {
            for (const auto& e : corepresentability_check(extended, p).entries)
                corep.record(e.agree, e.object);
        });
    out.push_back(corep.json());

    Tally disk{"disk-annihilation"};
    for (std::size_t v = 0; v < scene.space().num_vertices(); ++v)
        for (Codirection c : {Codirection::plus, Codirection::minus}) {
            ConormalPoint p{v, c};
            if (scene.stops().contains(p))
                continue;
            guarded(disk, [&] {
                disk.record(disk_annihilation_check(scene, p).agree(),
                            "(" + to_string(scene.space().vertices()[v]) + "," + to_string(c) + ")");
            });
        }
    out.push_back(disk.json());

    Tally stab{"stabilization"};
    if (!scene.space().is_circle())
        for (const auto& [gname, g] : objects) {
            bool compact = std::all_of(g.generators.begin(), g.generators.end(),
                                       [](const auto& gen) { return gen.left.is_finite() && gen.right.is_finite(); });
            if (!compact)
                continue;
            for (const auto& [fname, f] : scene.catalog())
                guarded(stab, [&] {
                    stab.record(stabilization_check(scene, g, f, 1).agree, gname + " against " + fname);
                });
        }
    out.push_back(stab.json());
    return out;
}

std::string group_text(const Report& g) {
    std::string out;
    std::size_t free = g.value("free", std::size_t{0});
    if (free)
        out = free == 1 ? "Z" : "Z^" + std::to_string(free);
    for (const auto& t : g["torsion"]) {
        std::string d = t.is_string() ? t.get<std::string>() : std::to_string(t.get<long>());
        out += (out.empty() ? "" : " + ") + std::string("Z/") + d;
    }
    return out;
}

std::string profile_text(const Report& p) {
    if (p.empty())
        return "0";
    std::string out;
    for (const auto& [degree, g] : p.items())
        out += (out.empty() ? "" : ", ") + std::string("H^") + degree + " = " + group_text(g);
    return out;
}

std::string flag(bool ok) {
    return ok ? "yes" : "NO";
}

} // namespace

const std::vector<std::pair<std::string, std::string>>& convention_ledger() {
    static const std::vector<std::pair<std::string, std::string>> ledger = {
        {"grading", "cohomological, d^n : C^n -> C^{n+1}"},
        {"shift", "C[k]^n = C^{n+k} with differential (-1)^k d"},
        {"cone", "cone(f)^n = A^{n+1} + B^n, d(a,b) = (-da, fa + db); fib(f) = cone(f)[-1]"},
        {"hom", "Hom(C,D)^n = prod_p Hom(C^p, D^{p+n}), d phi = d_D phi - (-1)^n phi d_C"},
        {"reeb", "positive wrapping moves (x,+) toward +x and (x,-) toward -x"},
        {"microsupport", "left open (l,-), left closed (l,+), right open (r,+), right closed (r,-)"},
        {"microstalk", "mu_(v,+) = fib(F(v) -> F(left edge)), mu_(v,-) = fib(F(v) -> F(right edge))"},
        {"crossing", "a closed interval shrinking to a point continues as an open one shifted by [1]"},
    };
    return ledger;
}

std::string convention_ledger_hash() {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& [name, statement] : convention_ledger())
        for (char c : name + "=" + statement + "\n") {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string engine_version() {
    return MICROWRAP_VERSION;
}

Report profile_json(const HomologyProfile& p) {
    Report out = Report::object();
    for (const auto& [degree, g] : p.groups()) {
        Report torsion = Report::array();
        for (const auto& t : g.torsion) {
            if (t.fits_slong_p())
                torsion.push_back(t.get_si());
            else
                torsion.push_back(to_string(t));
        }
        out[std::to_string(degree)] = {{"free", g.free_rank}, {"torsion", torsion}};
    }
    return out;
}

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
    Report conventions = Report::object();
    for (const auto& [name, statement] : convention_ledger())
        conventions[name] = statement;
    Report report = {{"engine", {{"name", "microwrap"}, {"version", engine_version()}}},
                     {"conventions", conventions},
                     {"conventions_hash", convention_ledger_hash()}};

    WrappedScene scene = scenario.scene();
    Report results = Report::array();
    std::size_t errors = 0;
    bool agree = true;
    for (const auto& q : scenario.queries) {
        Report entry = {{"query", query_json(q)}};
        try {
            Report r = run_query(scene, q, options);
            entry["status"] = "ok";
            for (const auto& [key, value] : r.items())
                entry[key] = value;
            if (r.contains("agree"))
                agree = agree && r["agree"].get<bool>();
        } catch (const std::exception& e) {
            entry["status"] = "error";
            entry["error"] = e.what();
            ++errors;
        }
        results.push_back(entry);
    }
    report["results"] = results;
    if (options.check) {
        Report checks;
        try {
            checks = run_checks(scene);
            for (const auto& c : checks)
                agree = agree && c["passed"].get<bool>();
        } catch (const std::exception& e) {
            checks = Report::array({{{"suite", "checks"}, {"error", e.what()}, {"passed", false}}});
            ++errors;
        }
        report["checks"] = checks;
    }
    report["summary"] = {{"queries", scenario.queries.size()}, {"errors", errors}, {"agree", agree}};
    return report;
}

std::string render_json(const Report& report) {
    return report.dump(2) + "\n";
}

std::string render_text(const Report& report) {
    std::ostringstream os;
    os << "microwrap " << report["engine"]["version"].get<std::string>() << ", conventions "
       << report["conventions_hash"].get<std::string>() << "\n";
    std::size_t i = 0;
    for (const auto& e : report["results"]) {
        const Report& q = e["query"];
        os << "\n[" << ++i << "] " << q["op"].get<std::string>();
        for (const char* key : {"source", "target", "object"})
            if (q.contains(key))
                os << " " << key << "=" << q[key].get<std::string>();
        if (q.contains("at"))
            os << " at (" << q["at"].get<std::string>() << "," << q["codirection"].get<std::string>() << ")";
        os << "\n";
        if (e["status"] == "error") {
            os << "  error: " << e["error"].get<std::string>() << "\n";
            continue;
        }
        std::string op = q["op"];
        if (e.contains("profile"))
            os << "  " << profile_text(e["profile"]) << "\n";
        if (e.contains("result")) {
            const Report& t = e["trace"];
            os << "  result: " << e["result"].get<std::string>() << "\n";
            os << "  events: " << t["events"]["rest"] << " rest, " << t["events"]["crossing"] << " crossing, "
               << t["events"]["escape"] << " escape\n";
        }
        if (e.contains("trace") && e["trace"].contains("steps")) {
            os << "  start: " << e["trace"]["initial"].get<std::string>() << "\n";
            for (const auto& s : e["trace"]["steps"])
                os << "  - " << s["event"].get<std::string>() << " -> " << s["state"].get<std::string>() << "\n";
        }
        if (op == "ss") {
            os << "  points:";
            for (const auto& p : e["points"])
                os << " (" << p["at"].get<std::string>() << "," << p["codirection"].get<std::string>() << ")";
            os << "\n  in Sh_Lambda: " << flag(e["in_sh_lambda"]) << "\n";
        }
        if (op == "verify-equivalence") {
            for (const auto& h : e["homs"])
                os << "  " << h["source"].get<std::string>() << " -> " << h["target"].get<std::string>() << ": "
                   << profile_text(h["wrapped"]) << " | " << profile_text(h["comparison"]) << "  "
                   << flag(h["agree"]) << "\n";
            for (const auto& g : e["generators"])
                os << "  " << g["name"].get<std::string>() << " -> " << g["wrapped"].get<std::string>()
                   << "  in Sh_Lambda " << flag(g["in_sh_lambda"]) << ", corepresents "
                   << flag(g["corepresents"]) << "\n";
            for (const auto& [name, ok] : e["fixed"].items())
                os << "  wrap+ fixes " << name << ": " << flag(ok) << "\n";
            for (const auto& s : e["skipped"])
                os << "  skipped " << s.get<std::string>() << "\n";
        }
        if (op == "corepresentability") {
            os << "  wrapped disk: " << e["wrapped_disk"].get<std::string>() << "\n";
            for (const auto& c : e["entries"])
                os << "  " << c["object"].get<std::string>() << ": " << profile_text(c["hom"]) << " | "
                   << profile_text(c["microstalk"]) << "  " << flag(c["agree"]) << "\n";
        }
        if (op == "disk-annihilation")
            os << "  annihilated: " << flag(e["annihilated"]) << ", hom vanishes: " << flag(e["hom_vanishes"])
               << "\n";
        if (e.contains("agree"))
            os << "  agree: " << flag(e["agree"]) << "\n";
    }
    if (report.contains("checks")) {
        os << "\nchecks\n";
        for (const auto& c : report["checks"]) {
            os << "  " << c["suite"].get<std::string>() << ": ";
            if (c.contains("error")) {
                os << "error: " << c["error"].get<std::string>() << "\n";
                continue;
            }
            os << c["cases"] << " cases, " << c["skipped"] << " skipped, " << c["failures"].size() << " failed\n";
            for (const auto& f : c["failures"])
                os << "    failed: " << f.get<std::string>() << "\n";
        }
    }
    const Report& s = report["summary"];
    os << "\n" << s["queries"] << " queries, " << s["errors"] << " errors, agreement " << flag(s["agree"]) << "\n";
    return os.str();
}

bool report_ok(const Report& report) {
    const Report& s = report["summary"];
    return s["errors"].get<std::size_t>() == 0 && s["agree"].get<bool>();
}

} // namespace microwrap
