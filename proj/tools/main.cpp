#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qtcs/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Solver toolkit for temporal constraint languages over the dense order"};
    app.require_subcommand(1);

    std::string engine_name = "auto";
    qtcs::OutputOpts opts;
    std::uint64_t seed = 1;
    std::string format = "text";
    app.add_option("--engine", engine_name, "Solver engine: min, mx, auto, brute")
        ->capture_default_str();
    app.add_flag("--trace", opts.trace, "Print the per-level solve trace");
    app.add_option("--seed", seed, "Seed for randomized commands")->capture_default_str();
    app.add_option("--format", format, "Output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    auto* check = app.add_subcommand("check-poly", "Test whether an operation preserves a relation");
    check->fallthrough();  // global flags may follow the subcommand
    std::string check_file, check_rel, check_op;
    check->add_option("file", check_file, "Instance file with rel declarations")->required();
    check->add_option("relation", check_rel, "Relation name")->required();
    check->add_option("op", check_op, "Operation: min, max, mx, dual-mx, pp, dual-pp")
        ->required();

    auto* normalize = app.add_subcommand("normalize", "Synthesize a syntactic normal form");
    normalize->fallthrough();
    std::string norm_file, norm_rel, norm_form;
    normalize->add_option("file", norm_file, "Instance file with rel declarations")->required();
    normalize->add_option("relation", norm_rel, "Relation name")->required();
    normalize->add_option("form", norm_form, "Form: min, pp, mxaffine")->required();

    auto* solve = app.add_subcommand("solve", "Decide a csp/qcsp instance file");
    solve->fallthrough();
    std::string solve_file;
    solve->add_option("file", solve_file, "Instance file")->required();

    auto* fuzz = app.add_subcommand("fuzz", "Differential testing against the brute-force oracles");
    fuzz->fallthrough();
    qtcs::FuzzConfig fuzz_config;
    std::string fuzz_mode = "csp";
    fuzz->add_option("--mode", fuzz_mode, "Mode: csp, qcsp, normal-form, preserve")
        ->capture_default_str();
    fuzz->add_option("--trials", fuzz_config.trials, "Number of trials")->capture_default_str();
    fuzz->add_option("--max-vars", fuzz_config.max_vars, "Variable cap per instance")
        ->capture_default_str();
    fuzz->add_option("--max-constraints", fuzz_config.max_constraints,
                     "Constraint cap per instance")
        ->capture_default_str();
    fuzz->add_option("--jobs", fuzz_config.threads, "Worker threads (0 = auto)")
        ->capture_default_str();

    auto* facts = app.add_subcommand("paper-facts", "Run the documented-facts regression suite");
    facts->fallthrough();
    std::string facts_filter, facts_corrupt;
    facts->add_option("--filter", facts_filter, "Run only facts whose name contains this");
    facts->add_option("--self-test-corrupt", facts_corrupt)->group("");  // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qtcs::kExitError;  // usage errors exit 2
    }

    opts.structured = format == "structured";
    const auto engine = qtcs::engine_from_name(engine_name);
    if (!engine) {
        std::cerr << "unknown engine '" << engine_name << "'\n";
        return qtcs::kExitError;
    }

    if (check->parsed())
        return qtcs::cmd_check_poly(check_file, check_rel, check_op, opts, std::cout, std::cerr);
    if (normalize->parsed())
        return qtcs::cmd_normalize(norm_file, norm_rel, norm_form, opts, std::cout, std::cerr);
    if (solve->parsed())
        return qtcs::cmd_solve(solve_file, *engine, opts, std::cout, std::cerr);
    if (fuzz->parsed()) {
        const auto mode = qtcs::fuzz_mode_from_name(fuzz_mode);
        if (!mode) {
            std::cerr << "unknown fuzz mode '" << fuzz_mode << "'\n";
            return qtcs::kExitError;
        }
        fuzz_config.mode = *mode;
        fuzz_config.seed = seed;
        fuzz_config.engine = *engine == qtcs::Engine::Auto ? qtcs::Engine::Min : *engine;
        return qtcs::cmd_fuzz(fuzz_config, opts, std::cout, std::cerr);
    }
    return qtcs::cmd_paper_facts(facts_filter, facts_corrupt, opts, std::cout, std::cerr);
}
