// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_CLI_COMMANDS_HPP
#define LSCRAN_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lscran/asymptotics.hpp"
#include "lscran/exponent_engine.hpp"

namespace lscran {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitTolerance = 2;
inline constexpr int kExitRuntime = 3;

std::string format_value(double v);  // %.17g with "inf"/"-inf" literals

struct TheoryOptions {
    ScalingParams params;
    std::vector<Operation> operations{Operation::IF, Operation::MRT,
                                      Operation::ZF};
};

// One key=value line per requested operation.
int cmd_theory(const TheoryOptions& opt, std::ostream& out);

struct ContourOptions {
    ScalingParams params;
    std::vector<Operation> operations{Operation::ZF};
    double rho_min = -2.0, rho_max = 2.0;
    double tau_min = -2.0, tau_max = 2.0;
    int steps = 41;
};

// CSV columns rho,tau,operation,region,zeta; operation-major, then rho-major.
int cmd_contour(const ContourOptions& opt, std::ostream& out);

struct SimulateOptions {
    SweepPlan plan;
    std::string output_prefix = "sweep";
};

// Writes <prefix>_trials.csv and <prefix>_summary.csv. On a mid-run error the
// completed trials are flushed and both files end with an "# incomplete"
// marker line; returns kExitRuntime in that case.
int cmd_simulate(const SimulateOptions& opt, std::ostream& log);

void write_trials_csv(const std::vector<TrialRow>& rows, std::ostream& os);
void write_summary_csv(const SweepResult& res, const ScalingParams& params,
                       std::ostream& os);

struct VerifyOptions {
    bool quick = false;      // fewer trials, slope tolerance widened to 0.25
    double alpha_only = 0.0; // when nonzero, restricts the part-1 oracle to it
    std::uint64_t seed = 2024;
};

// Runs the asymptotic-sum oracles at default grids; one line per oracle.
// Returns kExitTolerance if any slope misses its band.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

}  // namespace lscran

#endif  // LSCRAN_CLI_COMMANDS_HPP
