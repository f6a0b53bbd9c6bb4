// commands.cpp - CLI subcommand implementations.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "snc/report.hpp"
#include "snc/sim.hpp"

namespace snc {

using json = nlohmann::ordered_json;

namespace {

// Rows whose bound exceeds these are emitted but flagged.
constexpr double kDelaySentinelSeconds = 1e3;
constexpr double kBitsSentinel = 1e12;

double sentinelFor(Objective obj) {
    return obj == Objective::Delay ? kDelaySentinelSeconds : kBitsSentinel;
}

const char* unitFor(Objective obj) { return obj == Objective::Delay ? "s" : "bits"; }

json resultToJson(const BoundResult& r) {
    json j;
    j["method"] = methodName(r.method);
    j["objective"] = objectiveName(r.objective);
    j["value"] = r.value;
    j["theta_star"] = r.thetaStar;
    j["delta_star"] = r.deltaStar;
    j["epsilon_target"] = r.epsilonTarget;
    j["epsilon_achieved"] = r.achievedProbability;
    j["theta_at_grid_edge"] = r.thetaAtGridEdge;
    if (r.objective == Objective::OutputBurstiness) j["output_slope"] = r.outputSlope;
    json terms = json::array();
    for (const auto& b : r.breakdown) {
        terms.push_back(
            {{"term", b.name}, {"sigma_share", b.sigmaShare}, {"probability", b.probabilityShare}});
    }
    j["breakdown"] = terms;
    return j;
}

void writeFileOrThrow(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

void writeRecord(const std::string& path, const AnalysisConfig& cfg, const std::string& command,
                 const json& payload) {
    if (path.empty()) return;
    json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = json::parse(configToJson(cfg));
    doc["result"] = payload;
    writeFileOrThrow(path, doc.dump(2) + "\n");
}

ReportRow toRow(double sweepValue, const BoundResult& r) {
    return ReportRow{sweepValue, r.value,           r.thetaStar,
                     r.deltaStar, r.achievedProbability, methodName(r.method)};
}

std::vector<BoundMethod> methodsFor(const AnalysisConfig& cfg) {
    std::vector<BoundMethod> ms{BoundMethod::Theorem2, BoundMethod::ClosedForm};
    if (cfg.independence) ms.push_back(BoundMethod::Theorem3Independent);
    return ms;
}

} // namespace

int cmdBound(const AnalysisConfig& cfg, const std::string& recordPath, std::ostream& log) {
    TrafficModel through = cfg.throughModel();
    NetworkSpec spec = cfg.networkSpec();
    try {
        json results = json::array();
        BoundResult primary = optimizeBound(through, spec, cfg.objective,
                                            cfg.boundOptions(BoundMethod::Theorem2));
        results.push_back(resultToJson(primary));

        log << "objective:         " << objectiveName(cfg.objective) << "\n"
            << "bound:             " << formatDouble(primary.value) << " " << unitFor(cfg.objective)
            << "\n"
            << "theta*:            " << formatDouble(primary.thetaStar) << " /bit\n"
            << "delta*:            " << formatDouble(primary.deltaStar) << " b/s\n"
            << "epsilon target:    " << formatDouble(primary.epsilonTarget) << "\n"
            << "epsilon achieved:  " << formatDouble(primary.achievedProbability) << "\n"
            << "slot:              " << formatDouble(cfg.slotSeconds()) << " s\n";
        if (primary.thetaAtGridEdge) log << "note: theta* sits on the search-grid edge\n";
        log << "breakdown (term, sigma share bits, probability share):\n";
        for (const auto& b : primary.breakdown) {
            log << "  " << b.name << "\t" << formatDouble(b.sigmaShare) << "\t"
                << formatDouble(b.probabilityShare) << "\n";
        }

        BoundResult closed = optimizeBound(through, spec, cfg.objective,
                                           cfg.boundOptions(BoundMethod::ClosedForm));
        results.push_back(resultToJson(closed));
        double rel = std::abs(closed.value - primary.value) /
                     std::max(std::abs(primary.value), 1e-300);
        log << "closed-form check: " << formatDouble(closed.value) << " " << unitFor(cfg.objective)
            << " (rel diff " << formatDouble(rel) << ")\n";

        if (cfg.independence) {
            BoundResult indep = optimizeBound(through, spec, cfg.objective,
                                              cfg.boundOptions(BoundMethod::Theorem3Independent));
            results.push_back(resultToJson(indep));
            log << "independent case:  " << formatDouble(indep.value) << " "
                << unitFor(cfg.objective) << "\n";
        }

        writeRecord(recordPath, cfg, "bound", results);
        return 0;
    } catch (const InfeasibleError& e) {
        log << "infeasible: " << e.what() << "\n"
            << "closest-to-stable theta: " << formatDouble(e.closestTheta)
            << " /bit (load excess " << formatDouble(e.minExcessRate) << " b/s)\n";
        return 3;
    }
}

int cmdSweepHops(const AnalysisConfig& cfg, const std::vector<int>& hopsList,
                 const std::string& outPath, const std::string& recordPath, std::ostream& log) {
    if (hopsList.empty()) throw ConfigError("hops list is empty");
    for (int h : hopsList)
        if (h < 1) throw ConfigError("hop counts must be >= 1");

    TrafficModel through = cfg.throughModel();
    std::string table = rowHeader("hops", {"bound_per_hop", "bound_scaled"}) + "\n";
    json rows = json::array();
    try {
        for (int h : hopsList) {
            NetworkSpec spec = cfg.networkSpec();
            spec.hops = h;
            for (BoundMethod m : methodsFor(cfg)) {
                BoundResult r = optimizeBound(through, spec, cfg.objective, cfg.boundOptions(m));
                double perHop = r.value / h;
                double scaled = r.value / (h * (1.0 + std::log(static_cast<double>(h))));
                std::string status =
                    r.value > sentinelFor(cfg.objective) ? "flagged" : "ok";
                table += formatRow(toRow(h, r), {perHop, scaled}, status) + "\n";
                rows.push_back(resultToJson(r));
                rows.back()["hops"] = h;
            }
        }
    } catch (const InfeasibleError& e) {
        log << "infeasible: " << e.what() << "\n";
        return 3;
    }
    if (!outPath.empty()) writeFileOrThrow(outPath, table);
    else log << table;
    writeRecord(recordPath, cfg, "sweep-hops", rows);
    log << "sweep-hops: " << hopsList.size() << " hop counts written\n";
    return 0;
}

std::vector<int> defaultFlowSweep(const AnalysisConfig& cfg) {
    double perFlowMean = cfg.throughModel().meanRate() / cfg.through.count +
                         cfg.crossModel().meanRate() / cfg.cross.count;
    int maxCount = static_cast<int>(cfg.capacityBits() / perFlowMean) - 1;
    int lo = 10;
    if (maxCount <= lo) return {std::max(1, maxCount)};
    std::vector<int> counts;
    for (int i = 0; i < 20; ++i) {
        double f = std::exp(std::log(static_cast<double>(lo)) +
                            (std::log(static_cast<double>(maxCount)) -
                             std::log(static_cast<double>(lo))) *
                                i / 19.0);
        int c = static_cast<int>(std::lround(f));
        if (counts.empty() || c > counts.back()) counts.push_back(c);
    }
    return counts;
}

int cmdSweepFlows(const AnalysisConfig& cfg, const std::vector<int>& flowCounts,
                  const std::vector<int>& hopsList, const std::string& outPath,
                  const std::string& recordPath, std::ostream& log) {
    if (flowCounts.empty()) throw ConfigError("flow count list is empty");
    for (int f : flowCounts)
        if (f < 1) throw ConfigError("flow counts must be >= 1");
    std::vector<int> hops = hopsList.empty() ? std::vector<int>{1, 2, 5, 10} : hopsList;

    std::string table = rowHeader("n_plus_m", {"hops"}) + "\n";
    json rows = json::array();
    int feasibleRows = 0;
    for (int h : hops) {
        for (int f : flowCounts) {
            AnalysisConfig point = cfg;
            point.hops = h;
            point.through.count = f;
            point.cross.count = f;
            NetworkSpec spec = point.networkSpec();
            TrafficModel through = point.throughModel();
            for (BoundMethod m : methodsFor(cfg)) {
                try {
                    BoundResult r = optimizeBound(through, spec, cfg.objective,
                                                  cfg.boundOptions(m));
                    std::string status =
                        r.value > sentinelFor(cfg.objective) ? "flagged" : "ok";
                    table += formatRow(toRow(2.0 * f, r), {static_cast<double>(h)}, status) + "\n";
                    rows.push_back(resultToJson(r));
                    rows.back()["hops"] = h;
                    rows.back()["n_plus_m"] = 2 * f;
                    ++feasibleRows;
                } catch (const InfeasibleError& e) {
                    ReportRow row{2.0 * f, std::numeric_limits<double>::infinity(),
                                  e.closestTheta, 0.0,
                                  std::numeric_limits<double>::quiet_NaN(), methodName(m)};
                    table += formatRow(row, {static_cast<double>(h)}, "infeasible") + "\n";
                }
            }
        }
    }
    if (!outPath.empty()) writeFileOrThrow(outPath, table);
    else log << table;
    writeRecord(recordPath, cfg, "sweep-flows", rows);
    log << "sweep-flows: " << feasibleRows << " feasible rows\n";
    return feasibleRows > 0 ? 0 : 3;
}

namespace {

struct RepOutcome {
    std::int64_t samples = 0;
    std::int64_t violations = 0;
    double frequency = 0.0;
    double maxDelay = 0.0;
};

void exportTrace(const std::string& path, const TandemTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open trace file: " + path);
    out << "slot";
    for (int h = 1; h <= trace.hops; ++h) out << "\tbacklog_bits_hop" << h;
    out << "\te2e_delay_s\n";
    const auto& A = trace.cumulativeThrough.front();
    const auto& D = trace.cumulativeThrough.back();
    std::int64_t j = trace.warmupSlots;
    for (std::int64_t t = trace.warmupSlots; t < trace.horizonSlots; ++t) {
        double need = A[static_cast<std::size_t>(t)];
        if (j < t) j = t;
        while (j <= trace.horizonSlots &&
               D[static_cast<std::size_t>(j)] < need - (1e-9 + 1e-12 * need))
            ++j;
        if (j > trace.horizonSlots) break;
        out << t;
        for (int h = 0; h < trace.hops; ++h)
            out << '\t'
                << formatDouble(trace.backlog[static_cast<std::size_t>(h)][static_cast<std::size_t>(t)]);
        out << '\t' << formatDouble(static_cast<double>(j - t) * trace.slot) << "\n";
    }
}

} // namespace

int cmdSimulate(const AnalysisConfig& cfg, const SimulateOptions& opts,
                const std::string& outPath, std::ostream& log) {
    if (cfg.through.model != TrafficSpec::Model::Mmoo ||
        cfg.cross.model != TrafficSpec::Model::Mmoo)
        throw ConfigError("simulate requires mmoo traffic models");
    if (!(opts.epsilon > 0.0 && opts.epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0, 1)");
    if (opts.replications < 1) throw ConfigError("need at least one replication");
    if (opts.epsilon < 1e-3)
        log << "warning: epsilon below 1e-3 needs very long runs for a meaningful check\n";

    AnalysisConfig relaxed = cfg;
    relaxed.epsilon = opts.epsilon;
    TrafficModel through = relaxed.throughModel();
    BoundResult bound;
    try {
        bound = optimizeBound(through, relaxed.networkSpec(), Objective::Delay,
                              relaxed.boundOptions(BoundMethod::Theorem2));
    } catch (const InfeasibleError& e) {
        log << "infeasible: " << e.what() << "\n";
        return 3;
    }
    log << "analytic delay bound at epsilon=" << formatDouble(opts.epsilon) << ": "
        << formatDouble(bound.value) << " s (theta*=" << formatDouble(bound.thetaStar)
        << ", delta*=" << formatDouble(bound.deltaStar) << ")\n";

    SimConfig sim;
    sim.slot = cfg.slotSeconds();
    sim.horizonSlots = opts.horizonSlots;
    sim.hops = cfg.hops;
    sim.capacity = cfg.capacityBits();
    sim.through = MmooParams(cfg.through.peakMbps * 1e6, 1.0 / (cfg.through.meanOnMs * 1e-3),
                             1.0 / (cfg.through.meanOffMs * 1e-3));
    sim.throughCount = cfg.through.count;
    sim.cross = MmooParams(cfg.cross.peakMbps * 1e6, 1.0 / (cfg.cross.meanOnMs * 1e-3),
                           1.0 / (cfg.cross.meanOffMs * 1e-3));
    sim.crossCount = cfg.cross.count;
    sim.seed = opts.seed;
    sim.replications = opts.replications;
    sim.validate();

    if (sim.meanUtilization() >= 1.0)
        log << "warning: mean load reaches capacity; the system is unstable\n";
    if (opts.horizonSlots < 1000000)
        log << "warning: horizon below 1e6 slots; tail estimates will be unreliable\n";
    double expectedSamples =
        (1.0 - sim.warmupFraction) * static_cast<double>(opts.horizonSlots);
    if (expectedSamples < 100.0 / opts.epsilon)
        log << "warning: fewer than 100/epsilon samples per replication ("
            << formatDouble(expectedSamples) << ")\n";

    std::vector<RepOutcome> outcomes(static_cast<std::size_t>(opts.replications));
    int parallelism = opts.parallelism > 0
                          ? opts.parallelism
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    forEachReplication(opts.replications, parallelism, [&](int rep) {
        TandemTrace trace = runTandem(sim, rep);
        EmpiricalCcdf ccdf = virtualDelaySamples(trace);
        RepOutcome& o = outcomes[static_cast<std::size_t>(rep)];
        o.samples = ccdf.count();
        o.frequency = ccdf.ccdf(bound.value);
        o.violations = static_cast<std::int64_t>(
            std::llround(o.frequency * static_cast<double>(o.samples)));
        o.maxDelay = ccdf.maxSample();
    });

    std::string table =
        "replication\tsamples\tviolations\tfrequency\tbound_s\tepsilon\tpass\n";
    bool allPass = true;
    for (int rep = 0; rep < opts.replications; ++rep) {
        const RepOutcome& o = outcomes[static_cast<std::size_t>(rep)];
        bool pass = o.frequency <= opts.epsilon;
        allPass = allPass && pass;
        table += std::to_string(rep) + "\t" + std::to_string(o.samples) + "\t" +
                 std::to_string(o.violations) + "\t" + formatDouble(o.frequency) + "\t" +
                 formatDouble(bound.value) + "\t" + formatDouble(opts.epsilon) + "\t" +
                 (pass ? "1" : "0") + "\n";
        log << "replication " << rep << ": samples=" << o.samples
            << " violations=" << o.violations << " frequency=" << formatDouble(o.frequency)
            << " max_delay=" << formatDouble(o.maxDelay) << (pass ? " PASS" : " FAIL") << "\n";
    }
    if (!outPath.empty()) writeFileOrThrow(outPath, table);

    if (!opts.traceOut.empty()) {
        SimConfig traceCfg = sim;
        traceCfg.recordBacklog = true;
        exportTrace(opts.traceOut, runTandem(traceCfg, 0));
    }

    log << "overall: " << (allPass ? "PASS" : "FAIL") << " (empirical frequency vs epsilon="
        << formatDouble(opts.epsilon) << " in every replication)\n";
    return allPass ? 0 : 4;
}

} // namespace snc
