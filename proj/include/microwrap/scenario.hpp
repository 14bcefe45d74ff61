#pragma once

// Scenario files: a space, its stops, a named catalog of interval sheaves and
// an ordered list of queries, all in JSON. Rationals are strings "p/q".
//
//   {
//     "space":   {"kind": "line", "vertices": ["0", "1"]},
//     "stops":   [{"at": "0", "codirection": "-"}, {"at": "1", "codirection": "+"}],
//     "objects": [{"name": "U", "generators": [{"interval": "(1/4,1/2)"}]}],
//     "queries": [{"op": "wrap+", "object": "U"}]
//   }
//
// A circle space adds "perimeter". A generator may carry a coefficient complex
// {"ranks": {"0": 1}, "differentials": {"-1": [[2]]}}; the default is ℤ in
// degree 0.

#include "microwrap/wshcat.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace microwrap {

struct Query {
    enum class Op {
        homw,
        comparison,
        wrap_plus,
        wrap_minus,
        microstalk,
        ss,
        verify_equivalence,
        corepresentability,
        disk_annihilation,
    };

    Op op = Op::homw;
    /// homw, comparison
    std::string source;
    std::string target;
    /// wrap+, wrap-, microstalk, ss
    std::string object;
    /// microstalk, corepresentability, disk-annihilation
    std::optional<Rational> at;
    Codirection codirection = Codirection::plus;

    bool operator==(const Query& other) const = default;
};

/// "homw", "wrap+", "verify-equivalence", ...
std::string to_string(Query::Op op);

struct Scenario {
    StratSpace space = StratSpace::line({});
    StopSet stops;
    std::vector<std::pair<std::string, IntervalSheaf>> catalog;
    std::vector<Query> queries;

    WrappedScene scene() const;
    bool operator==(const Scenario& other) const = default;
};

/// Throws ScenarioError: syntax errors carry line and column, semantic errors
/// name the offending entry.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
/// Pretty JSON accepted by parse_scenario.
std::string serialize_scenario(const Scenario& scenario);

/// "(1/4,1/2)", "[0,+inf)", "[1/2,1/2]", "S1". Throws ScenarioError.
IntervalGenerator parse_interval(std::string_view text, ChainComplex coefficient = ChainComplex::unit());

} // namespace microwrap
