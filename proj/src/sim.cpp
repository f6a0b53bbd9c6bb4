// sim.cpp - Tandem FIFO fluid simulation and empirical tail statistics.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace snc {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SplitMixStream::SplitMixStream(const StreamKey& key, std::uint32_t flow) {
    state_ = key.seed;
    std::uint64_t salt[3] = {static_cast<std::uint64_t>(key.replication) + 1,
                             static_cast<std::uint64_t>(key.hop) + 1,
                             static_cast<std::uint64_t>(flow) + 1};
    for (std::uint64_t v : salt) {
        state_ ^= v * 0x9e3779b97f4a7c15ULL;
        splitmix64(state_);
    }
}

std::uint64_t SplitMixStream::next() { return splitmix64(state_); }

double SplitMixStream::uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

std::vector<float> generateMmoo(const MmooParams& params, int nFlows, std::int64_t horizonSlots,
                                double slot, const StreamKey& key, MmooGenStats* stats) {
    if (nFlows < 0) throw std::invalid_argument("flow count must be >= 0");
    if (horizonSlots < 1) throw std::invalid_argument("horizon must be >= 1 slot");
    if (!(slot > 0.0)) throw std::invalid_argument("slot must be > 0");

    std::vector<std::int32_t> activeDiff(static_cast<std::size_t>(horizonSlots) + 1, 0);
    double pOn = params.offExitRate / (params.offExitRate + params.onExitRate);
    for (int f = 0; f < nFlows; ++f) {
        SplitMixStream rng(key, static_cast<std::uint32_t>(f));
        bool on = rng.uniform() < pOn;
        std::int64_t t = 0;
        while (t < horizonSlots) {
            double rate = on ? params.onExitRate : params.offExitRate;
            double draw = -std::log(rng.uniform()) / (rate * slot);
            std::int64_t dwell = 1 + static_cast<std::int64_t>(draw);
            std::int64_t end = std::min(t + dwell, horizonSlots);
            if (on) {
                ++activeDiff[static_cast<std::size_t>(t)];
                --activeDiff[static_cast<std::size_t>(end)];
            }
            if (stats && t + dwell <= horizonSlots) {
                if (on) {
                    ++stats->onDwells;
                    stats->onDwellSlotSum += static_cast<double>(dwell);
                } else {
                    ++stats->offDwells;
                    stats->offDwellSlotSum += static_cast<double>(dwell);
                }
            }
            t += dwell;
            on = !on;
        }
    }

    std::vector<float> bits(static_cast<std::size_t>(horizonSlots));
    double perFlow = params.peakRate * slot;
    std::int64_t active = 0;
    for (std::int64_t t = 0; t < horizonSlots; ++t) {
        active += activeDiff[static_cast<std::size_t>(t)];
        bits[static_cast<std::size_t>(t)] = static_cast<float>(active * perFlow);
    }
    return bits;
}

void SimConfig::validate() const {
    if (!(slot > 0.0)) throw std::invalid_argument("slot must be > 0");
    if (horizonSlots < 1) throw std::invalid_argument("horizon must be >= 1 slot");
    if (hops < 1) throw std::invalid_argument("need at least one hop");
    if (!(capacity > 0.0)) throw std::invalid_argument("capacity must be > 0");
    if (throughCount < 1) throw std::invalid_argument("need at least one through flow");
    if (crossCount < 0) throw std::invalid_argument("cross flow count must be >= 0");
    if (replications < 1) throw std::invalid_argument("need at least one replication");
    if (!(warmupFraction >= 0.0 && warmupFraction < 1.0))
        throw std::invalid_argument("warm-up fraction must lie in [0, 1)");
}

double SimConfig::meanUtilization() const {
    return (throughCount * through.meanRate() + crossCount * cross.meanRate()) / capacity;
}

TandemTrace runTandem(const SimConfig& cfg, int replication) {
    cfg.validate();
    const std::int64_t T = cfg.horizonSlots;
    const double capSlot = cfg.capacity * cfg.slot;

    TandemTrace trace;
    trace.slot = cfg.slot;
    trace.hops = cfg.hops;
    trace.capacity = cfg.capacity;
    trace.horizonSlots = T;
    trace.warmupSlots = static_cast<std::int64_t>(cfg.warmupFraction * static_cast<double>(T));

    StreamKey throughKey{cfg.seed, static_cast<std::uint32_t>(replication), 0};
    std::vector<float> through =
        generateMmoo(cfg.through, cfg.throughCount, T, cfg.slot, throughKey);
    trace.crossArrivals.reserve(static_cast<std::size_t>(cfg.hops));
    for (int h = 1; h <= cfg.hops; ++h) {
        StreamKey k{cfg.seed, static_cast<std::uint32_t>(replication),
                    static_cast<std::uint32_t>(h)};
        if (cfg.crossCount > 0) {
            trace.crossArrivals.push_back(generateMmoo(cfg.cross, cfg.crossCount, T, cfg.slot, k));
        } else {
            trace.crossArrivals.emplace_back(static_cast<std::size_t>(T), 0.0f);
        }
    }

    trace.cumulativeThrough.assign(static_cast<std::size_t>(cfg.hops) + 1,
                                   std::vector<double>(static_cast<std::size_t>(T) + 1, 0.0));
    if (cfg.recordBacklog)
        trace.backlog.assign(static_cast<std::size_t>(cfg.hops),
                             std::vector<float>(static_cast<std::size_t>(T), 0.0f));

    std::vector<double> qThrough(static_cast<std::size_t>(cfg.hops) + 1, 0.0);
    std::vector<double> qCross(static_cast<std::size_t>(cfg.hops) + 1, 0.0);
    for (std::int64_t t = 0; t < T; ++t) {
        double in = through[static_cast<std::size_t>(t)];
        trace.cumulativeThrough[0][static_cast<std::size_t>(t) + 1] =
            trace.cumulativeThrough[0][static_cast<std::size_t>(t)] + in;
        for (int h = 1; h <= cfg.hops; ++h) {
            double qt = qThrough[static_cast<std::size_t>(h)] + in;
            double qc = qCross[static_cast<std::size_t>(h)] +
                        trace.crossArrivals[static_cast<std::size_t>(h - 1)][static_cast<std::size_t>(t)];
            double total = qt + qc;
            double served = std::min(total, capSlot);
            double dt = total > 0.0 ? served * (qt / total) : 0.0;
            double dc = served - dt;
            qThrough[static_cast<std::size_t>(h)] = std::max(0.0, qt - dt);
            qCross[static_cast<std::size_t>(h)] = std::max(0.0, qc - dc);
            trace.cumulativeThrough[static_cast<std::size_t>(h)][static_cast<std::size_t>(t) + 1] =
                trace.cumulativeThrough[static_cast<std::size_t>(h)][static_cast<std::size_t>(t)] + dt;
            if (cfg.recordBacklog)
                trace.backlog[static_cast<std::size_t>(h - 1)][static_cast<std::size_t>(t)] =
                    static_cast<float>(qThrough[static_cast<std::size_t>(h)] +
                                       qCross[static_cast<std::size_t>(h)]);
            in = dt;
        }
    }
    return trace;
}

EmpiricalCcdf::EmpiricalCcdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("no samples");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCcdf::ccdf(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(sorted_.end() - it) / static_cast<double>(sorted_.size());
}

double EmpiricalCcdf::quantile(double p) const {
    double n = static_cast<double>(sorted_.size());
    if (!(p >= 1.0 / n)) throw std::invalid_argument("quantile needs p >= 1/count");
    auto idx = static_cast<std::int64_t>(std::ceil(n - 1.0 - p * n - 1e-9));
    idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(sorted_.size()) - 1);
    return sorted_[static_cast<std::size_t>(idx)];
}

EmpiricalCcdf virtualDelaySamples(const TandemTrace& trace) {
    const auto& A = trace.cumulativeThrough.front();
    const auto& D = trace.cumulativeThrough.back();
    const std::int64_t T = trace.horizonSlots;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(T - trace.warmupSlots + 1));
    std::int64_t j = trace.warmupSlots;
    for (std::int64_t t = trace.warmupSlots; t <= T; ++t) {
        double need = A[static_cast<std::size_t>(t)];
        double tol = 1e-9 + 1e-12 * need;
        if (j < t) j = t;
        while (j <= T && D[static_cast<std::size_t>(j)] < need - tol) ++j;
        if (j > T) break; // departure beyond the horizon; censored
        samples.push_back(static_cast<double>(j - t) * trace.slot);
    }
    return EmpiricalCcdf(std::move(samples));
}

double windowViolationFrequency(const std::vector<float>& perSlot, std::int64_t windowSlots,
                                double threshold) {
    const auto n = static_cast<std::int64_t>(perSlot.size());
    if (windowSlots < 1 || windowSlots > n)
        throw std::invalid_argument("window must fit the trace");
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t t = 0; t < n; ++t)
        prefix[static_cast<std::size_t>(t) + 1] =
            prefix[static_cast<std::size_t>(t)] + perSlot[static_cast<std::size_t>(t)];
    std::int64_t violations = 0;
    std::int64_t windows = n - windowSlots + 1;
    for (std::int64_t s = 0; s < windows; ++s) {
        double sum = prefix[static_cast<std::size_t>(s + windowSlots)] -
                     prefix[static_cast<std::size_t>(s)];
        if (sum > threshold) ++violations;
    }
    return static_cast<double>(violations) / static_cast<double>(windows);
}

double dynamicServerWorstSlack(const TandemTrace& trace, int hop) {
    if (hop < 1 || hop > trace.hops) throw std::invalid_argument("hop out of range");
    const auto& A = trace.cumulativeThrough[static_cast<std::size_t>(hop - 1)];
    const auto& D = trace.cumulativeThrough[static_cast<std::size_t>(hop)];
    const auto& cross = trace.crossArrivals[static_cast<std::size_t>(hop - 1)];
    const double capSlot = trace.capacity * trace.slot;

    double worst = std::numeric_limits<double>::infinity();
    double floor = A[0];
    for (std::int64_t t = 1; t <= trace.horizonSlots; ++t) {
        floor = std::min(A[static_cast<std::size_t>(t)],
                         floor + capSlot - cross[static_cast<std::size_t>(t - 1)]);
        worst = std::min(worst, D[static_cast<std::size_t>(t)] - floor);
    }
    return worst;
}

void forEachReplication(int replications, int parallelism, const std::function<void(int)>& f) {
    if (replications < 1) return;
    parallelism = std::max(1, std::min(parallelism, replications));
    std::vector<std::thread> workers;
    std::atomic<int> nextRep{0};
    for (int w = 0; w < parallelism; ++w) {
        workers.emplace_back([&]() {
            for (int rep = nextRep.fetch_add(1); rep < replications; rep = nextRep.fetch_add(1))
                f(rep);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace snc
