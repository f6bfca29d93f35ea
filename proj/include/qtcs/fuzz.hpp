#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtcs/convert.hpp"

namespace qtcs {

enum class FuzzMode { Csp, Qcsp, NormalForm, Preserve };

std::optional<FuzzMode> fuzz_mode_from_name(std::string_view name);
const char* fuzz_mode_name(FuzzMode m);

struct FuzzConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    int max_vars = 5;
    int max_constraints = 8;
    Engine engine = Engine::Min;  // csp / qcsp modes
    FuzzMode mode = FuzzMode::Csp;
    int threads = 0;  // 0 = pick from hardware
};

struct FuzzMismatch {
    int trial = 0;
    std::uint64_t seed = 0;
    std::string detail;
};

struct FuzzReport {
    int trials = 0;
    int agree = 0;
    std::vector<FuzzMismatch> mismatches;
};

// Differential runs against the brute-force oracles. Trials are pure
// functions of their derived seed and run on a worker pool; results merge in
// trial order, so reports are byte-for-byte reproducible. Size caps are
// clamped to the oracle limits no matter what the config asks for.
FuzzReport run_fuzz(const FuzzConfig& config);

}  // namespace qtcs
