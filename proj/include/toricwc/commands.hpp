#pragma once
// Command dispatch: each command runs one module pipeline on a problem and
// returns a deterministic JSON report with its checks.

#include "toricwc/problem.hpp"

namespace twc {

struct RunOptions {
    std::optional<double> tol;               // overrides every check tolerance of the command
    std::optional<int> draws;                // parameter draws (verify-fm: 20, mb-verify: 3)
    std::vector<double> y;                   // |y^e| samples; default multiples of |conifold|
    std::optional<std::uint64_t> seed;       // overrides the problem seed
    std::optional<int> trunc_y;              // y-degree bound
    std::optional<Rat> trunc_z;              // low end of the z window
    int parallel = 1;                        // worker threads for `all`
};

const std::vector<std::string>& command_names();

/// Report with "pass" set; module errors become an "error" block instead of
/// propagating. Throws only for UnknownCommand.
Json run_command(const std::string& command, const Problem& problem, const RunOptions& opt = {});

/// Report for a failure before a problem was available (parse errors, bad flags).
Json error_report(const std::string& command, const std::exception& e);

Json options_to_json(const RunOptions& opt);

}  // namespace twc
