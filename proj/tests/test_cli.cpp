#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtcs/commands.hpp"
#include "qtcs/facts.hpp"

using namespace qtcs;

namespace {

struct TempFile {
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = (std::filesystem::temp_directory_path() /
                ("qtcs_cli_test_" + std::to_string(++counter) + ".tq"))
                   .string();
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

const char* kRelations =
    "rel U(x,y,z) := (x = y & y < z) | (x = z & z < y) | (x = y & y = z)\n"
    "rel X(x,y,z) := (x = y & y < z) | (x = z & z < y) | (y = z & y < x)\n"
    "rel LEQ(x,y) := x <= y\n";

}  // namespace

TEST_CASE("check-poly prints verdicts and counterexamples") {
    TempFile file(kRelations);
    OutputOpts opts;
    std::ostringstream out, err;
    CHECK(cmd_check_poly(file.path, "U", "min", opts, out, err) == kExitOk);
    CHECK(out.str() == "CLOSED\n");

    std::ostringstream out2, err2;
    CHECK(cmd_check_poly(file.path, "U", "mx", opts, out2, err2) == kExitNegative);
    CHECK(out2.str().find("NOT CLOSED") != std::string::npos);
    CHECK(out2.str().find("t1") != std::string::npos);
    CHECK(out2.str().find("image") != std::string::npos);

    std::ostringstream out3, err3;
    CHECK(cmd_check_poly(file.path, "LEQ", "mx", opts, out3, err3) == kExitNegative);

    std::ostringstream out4, err4;
    CHECK(cmd_check_poly(file.path, "NOPE", "min", opts, out4, err4) == kExitError);
    CHECK(cmd_check_poly(file.path, "U", "frobnicate", opts, out4, err4) == kExitError);
}

TEST_CASE("normalize prints re-parseable forms") {
    TempFile file(kRelations);
    OutputOpts opts;
    std::ostringstream out, err;
    CHECK(cmd_normalize(file.path, "U", "min", opts, out, err) == kExitOk);
    CHECK(out.str() == "(x >= y | x >= z) & (y >= x) & (z >= x)\n");

    std::ostringstream out2, err2;
    CHECK(cmd_normalize(file.path, "X", "mxaffine", opts, out2, err2) == kExitOk);
    CHECK(out2.str().find("scope (x,y,z), T = {001,010,100}") != std::string::npos);

    std::ostringstream out3, err3;
    CHECK(cmd_normalize(file.path, "X", "min", opts, out3, err3) == kExitNegative);
    CHECK(out3.str() == "NOT CLOSED\n");

    std::ostringstream out4, err4;
    CHECK(cmd_normalize(file.path, "U", "weird", opts, out4, err4) == kExitError);
}

TEST_CASE("solve handles csp and qcsp files with all engines") {
    OutputOpts opts;
    {
        TempFile file("qcsp forall y exists x : x > y\n");
        for (Engine e : {Engine::Min, Engine::Mx, Engine::Auto, Engine::Brute}) {
            std::ostringstream out, err;
            CHECK(cmd_solve(file.path, e, opts, out, err) == kExitOk);
            CHECK(out.str() == "TRUE\n");
        }
    }
    {
        TempFile file("csp a < b & b < a\n");
        std::ostringstream out, err;
        CHECK(cmd_solve(file.path, Engine::Auto, opts, out, err) == kExitNegative);
        CHECK(out.str() == "UNSAT\n");
    }
    {
        TempFile file(std::string(kRelations) + "csp X(a,b,c) & a < c & b < c\n");
        std::ostringstream out, err;
        CHECK(cmd_solve(file.path, Engine::Auto, opts, out, err) == kExitOk);
        CHECK(out.str() == "SAT\na = 0\nb = 0\nc = 1\n");
    }
    {
        TempFile file("csp x ! y\n");
        std::ostringstream out, err;
        CHECK(cmd_solve(file.path, Engine::Auto, opts, out, err) == kExitError);
        CHECK_FALSE(err.str().empty());
    }
    {
        // Mixed language: exit 2 rather than a bogus verdict.
        TempFile file(std::string(kRelations) + "csp X(a,b,c) & LEQ(a,b)\n");
        std::ostringstream out, err;
        CHECK(cmd_solve(file.path, Engine::Auto, opts, out, err) == kExitError);
    }
}

TEST_CASE("solve trace output") {
    OutputOpts opts;
    opts.trace = true;
    TempFile file("qcsp forall y exists x : x > y\n");
    std::ostringstream out, err;
    CHECK(cmd_solve(file.path, Engine::Min, opts, out, err) == kExitOk);
    CHECK(out.str().find("level 1: sat=YES") != std::string::npos);
    CHECK(out.str().find("forall=OK") != std::string::npos);
}

TEST_CASE("structured output is line-oriented key=value") {
    OutputOpts opts;
    opts.structured = true;
    TempFile file(std::string(kRelations) + "csp X(a,b,c) & a < c & b < c\n");
    std::ostringstream out, err;
    CHECK(cmd_solve(file.path, Engine::Auto, opts, out, err) == kExitOk);
    CHECK(out.str().find("verdict=SAT\n") != std::string::npos);
    CHECK(out.str().find("assign.a=0\n") != std::string::npos);

    TempFile rel_file(kRelations);
    std::ostringstream out2, err2;
    CHECK(cmd_check_poly(rel_file.path, "U", "min", opts, out2, err2) == kExitOk);
    CHECK(out2.str().find("closed=yes\n") != std::string::npos);
}

TEST_CASE("fuzz command reports agreement and is byte-for-byte deterministic") {
    FuzzConfig cfg;
    cfg.mode = FuzzMode::Csp;
    cfg.engine = Engine::Min;
    cfg.trials = 40;
    cfg.seed = 2024;
    OutputOpts opts;
    std::ostringstream out1, out2, err;
    CHECK(cmd_fuzz(cfg, opts, out1, err) == kExitOk);
    cfg.threads = 1;
    CHECK(cmd_fuzz(cfg, opts, out2, err) == kExitOk);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str() == "40/40 agree\n");

    FuzzConfig zero = cfg;
    zero.trials = 0;
    std::ostringstream out3;
    CHECK(cmd_fuzz(zero, opts, out3, err) == kExitOk);
    CHECK(out3.str() == "0/0 agree\n");
}

TEST_CASE("paper-facts suite passes and notices corrupted fixtures") {
    OutputOpts opts;
    std::ostringstream out, err;
    CHECK(cmd_paper_facts("", "", opts, out, err) == kExitOk);
    CHECK(out.str().find("FAIL") == std::string::npos);

    // Self-test: a damaged U fixture must flip at least one fact to FAIL.
    std::ostringstream out2, err2;
    CHECK(cmd_paper_facts("", "U", opts, out2, err2) == kExitNegative);
    CHECK(out2.str().find("FAIL") != std::string::npos);

    // A filter that matches nothing passes vacuously.
    std::ostringstream out3, err3;
    CHECK(cmd_paper_facts("no-such-fact", "", opts, out3, err3) == kExitOk);
    CHECK(out3.str().find("0/0 facts pass") != std::string::npos);
}

TEST_CASE("fact suite covers the documented behaviours") {
    const auto results = run_fact_suite({});
    CHECK(results.size() >= 13);
    for (const FactResult& r : results) {
        CAPTURE(r.name);
        CHECK(r.pass);
    }
}
