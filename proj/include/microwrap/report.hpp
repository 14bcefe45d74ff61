#pragma once

// Running scenarios. A report is JSON:
//
//   {"engine": {...}, "conventions": {...}, "conventions_hash": "...",
//    "results": [{"query": {...}, "status": "ok", ...}, ...],
//    "checks": [...],            // only with RunOptions::check
//    "summary": {"queries": n, "errors": k, "agree": true}}
//
// Homology profiles are {"<degree>": {"free": n, "torsion": [d1, ...]}}.

#include "microwrap/scenario.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace microwrap {

struct RunOptions {
    /// Include full wrap traces.
    bool trace = false;
    /// Append the built-in suites for the scenario's scene.
    bool check = false;
};

using Report = nlohmann::ordered_json;

/// Sign and grading conventions the engine commits to, as (name, statement).
const std::vector<std::pair<std::string, std::string>>& convention_ledger();
/// 16 hex digits, FNV-1a over the ledger.
std::string convention_ledger_hash();
std::string engine_version();

/// Never throws for a failing query: the error is recorded in its entry.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

Report profile_json(const HomologyProfile& p);
std::string render_json(const Report& report);
std::string render_text(const Report& report);

/// True iff no query errored and every agreement flag holds.
bool report_ok(const Report& report);

} // namespace microwrap
