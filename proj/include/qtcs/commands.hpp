#pragma once

#include <iosfwd>
#include <string>

#include "qtcs/fuzz.hpp"

namespace qtcs {

// Exit-code contract: 0 success/agree, 1 semantic negative (UNSAT, FALSE,
// NOT CLOSED, mismatch), 2 usage or input errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

struct OutputOpts {
    bool structured = false;  // line-oriented key=value records
    bool trace = false;
};

int cmd_check_poly(const std::string& path, const std::string& rel_name,
                   const std::string& op_name, const OutputOpts& opts, std::ostream& out,
                   std::ostream& err);

int cmd_normalize(const std::string& path, const std::string& rel_name,
                  const std::string& form, const OutputOpts& opts, std::ostream& out,
                  std::ostream& err);

int cmd_solve(const std::string& path, Engine engine, const OutputOpts& opts,
              std::ostream& out, std::ostream& err);

int cmd_fuzz(const FuzzConfig& config, const OutputOpts& opts, std::ostream& out,
             std::ostream& err);

int cmd_paper_facts(const std::string& filter, const std::string& corrupt,
                    const OutputOpts& opts, std::ostream& out, std::ostream& err);

}  // namespace qtcs
