#include "microwrap/errors.hpp"
#include "microwrap/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Wrapped sheaves on triangulated 1-manifolds with Legendrian stops"};
    app.set_version_flag("--version", microwrap::engine_version());
    app.require_subcommand(1);

    std::string file, format = "json", out;
    microwrap::RunOptions options;
    CLI::App* run = app.add_subcommand("run", "Run the queries of a scenario file");
    run->add_option("file", file, "Scenario JSON")->required();
    run->add_flag("--check", options.check, "Append the built-in suites for the scenario's scene");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    run->add_flag("--trace", options.trace, "Include full wrap traces");
    run->add_option("--out", out, "Write the report here instead of standard output");

    CLI::App* validate = app.add_subcommand("validate", "Parse a scenario and print it in normal form");
    validate->add_option("file", file, "Scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        microwrap::Scenario scenario = microwrap::load_scenario(file);
        if (*validate) {
            std::cout << microwrap::serialize_scenario(scenario);
            return 0;
        }
        microwrap::Report report = microwrap::run_scenario(scenario, options);
        std::string text = format == "text" ? microwrap::render_text(report) : microwrap::render_json(report);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(out);
            if (!(os << text)) {
                std::cerr << "microwrap: cannot write " << out << "\n";
                return 2;
            }
        }
        return microwrap::report_ok(report) ? 0 : 1;
    } catch (const microwrap::Error& e) {
        std::cerr << "microwrap: " << e.what() << "\n";
        return 2;
    }
}
