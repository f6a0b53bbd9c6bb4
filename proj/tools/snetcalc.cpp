// snetcalc.cpp - Command-line front end: bound, sweep-hops, sweep-flows and
// simulate subcommands over a JSON analysis config.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "snc/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stochastic network calculus bounds for tandem networks with cross traffic"};
    app.set_version_flag("--version", snc::kVersion);
    app.require_subcommand(1);

    std::string configPath;
    std::string outPath;
    std::string recordPath;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--config", configPath, "analysis config (JSON)")->required();
        cmd->add_option("--out", outPath, "output table path (stdout if omitted)");
        cmd->add_option("--record", recordPath, "JSON record with full provenance");
    };

    CLI::App* bound = app.add_subcommand("bound", "compute the configured bound");
    addCommon(bound);
    double epsilonOverride = 0.0;
    bound->add_option("--epsilon", epsilonOverride, "override the config epsilon");

    CLI::App* sweepHops = app.add_subcommand("sweep-hops", "bound vs hop count");
    addCommon(sweepHops);
    std::vector<int> hopsList;
    sweepHops->add_option("--hops", hopsList, "hop counts to sweep")->delimiter(',');

    CLI::App* sweepFlows = app.add_subcommand("sweep-flows", "bound vs N=M flow count");
    addCommon(sweepFlows);
    std::vector<int> flowsList;
    std::vector<int> flowHops;
    sweepFlows->add_option("--flows", flowsList, "N=M counts to sweep (default: 20 log-spaced)")
        ->delimiter(',');
    sweepFlows->add_option("--hops", flowHops, "hop counts (default: 1,2,5,10)")->delimiter(',');

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo validation of the delay bound");
    addCommon(simulate);
    snc::SimulateOptions simOpts;
    simulate->add_option("--epsilon", simOpts.epsilon, "relaxed violation probability")
        ->default_val(1e-2);
    simulate->add_option("--seed", simOpts.seed, "base RNG seed")->default_val(1);
    simulate->add_option("--replications", simOpts.replications, "independent replications")
        ->default_val(10);
    simulate->add_option("--horizon-slots", simOpts.horizonSlots, "slots per replication")
        ->default_val(10000000);
    simulate->add_option("--parallelism", simOpts.parallelism,
                         "worker threads (0 = hardware concurrency)");
    simulate->add_option("--trace-out", simOpts.traceOut, "columnar trace export path");

    CLI11_PARSE(app, argc, argv);

    try {
        snc::AnalysisConfig cfg = snc::loadConfigFile(configPath);
        if (bound->parsed()) {
            if (epsilonOverride > 0.0) cfg.epsilon = epsilonOverride;
            // bound writes its record to --record (or --out for compatibility)
            std::string record = recordPath.empty() ? outPath : recordPath;
            return snc::cmdBound(cfg, record, std::cout);
        }
        if (sweepHops->parsed()) {
            if (hopsList.empty()) throw snc::ConfigError("sweep-hops needs a non-empty --hops list");
            return snc::cmdSweepHops(cfg, hopsList, outPath, recordPath, std::cout);
        }
        if (sweepFlows->parsed()) {
            std::vector<int> flows = flowsList.empty() ? snc::defaultFlowSweep(cfg) : flowsList;
            return snc::cmdSweepFlows(cfg, flows, flowHops, outPath, recordPath, std::cout);
        }
        return snc::cmdSimulate(cfg, simOpts, outPath, std::cout);
    } catch (const snc::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
