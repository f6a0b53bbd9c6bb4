// commands.hpp - Implementations behind the CLI subcommands, callable from
// tests. Exit codes: 0 success, 2 validation error (via ConfigError), 3
// infeasible, 4 simulation validation failure.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_COMMANDS_HPP
#define SNC_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "snc/config.hpp"

namespace snc {

inline constexpr const char* kVersion = "snetcalc 0.1.0";

// Optimizes the configured objective, prints a human-readable block and
// optionally writes a JSON record with full provenance.
int cmdBound(const AnalysisConfig& cfg, const std::string& recordPath, std::ostream& log);

// One table row per hop count per method, with d/H and d/(H(1+ln H)) columns.
int cmdSweepHops(const AnalysisConfig& cfg, const std::vector<int>& hopsList,
                 const std::string& outPath, const std::string& recordPath, std::ostream& log);

// One table row per flow count (N = M, sweep value N+M) per hop count per
// method; infeasible points are flagged rather than fatal.
int cmdSweepFlows(const AnalysisConfig& cfg, const std::vector<int>& flowCounts,
                  const std::vector<int>& hopsList, const std::string& outPath,
                  const std::string& recordPath, std::ostream& log);

// Default sweep list: up to 20 log-spaced N = M values from 10 up to the
// largest mean-stable count.
std::vector<int> defaultFlowSweep(const AnalysisConfig& cfg);

struct SimulateOptions {
    double epsilon = 1e-2; // relaxed validation target
    std::uint64_t seed = 1;
    int replications = 10;
    std::int64_t horizonSlots = 10000000;
    int parallelism = 0;    // 0 = hardware concurrency
    std::string traceOut;   // optional columnar trace export path
};

// Monte Carlo validation of the delay bound at a relaxed epsilon: runs the
// replications, compares the empirical violation frequency of the analytic
// quantile against epsilon in every replication.
int cmdSimulate(const AnalysisConfig& cfg, const SimulateOptions& opts,
                const std::string& outPath, std::ostream& log);

} // namespace snc

#endif // SNC_COMMANDS_HPP
