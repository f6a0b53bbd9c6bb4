// sim.hpp - Discrete-time Monte Carlo simulation of MMOO sources through H
// tandem FIFO constant-rate queues with fresh cross traffic at every hop,
// plus the empirical statistics used to validate envelopes and bounds.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_SIM_HPP
#define SNC_SIM_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "snc/traffic.hpp"

namespace snc {

// Identifies one random stream. Every (seed, replication, hop, flow) tuple
// yields its own deterministic sequence, so replications and flows are
// independent and results do not depend on generation order.
struct StreamKey {
    std::uint64_t seed = 1;
    std::uint32_t replication = 0;
    std::uint32_t hop = 0; // 0 for through flows, hop index for cross flows
};

class SplitMixStream {
public:
    SplitMixStream(const StreamKey& key, std::uint32_t flow);
    std::uint64_t next();
    double uniform(); // in (0, 1), never exactly 0 or 1

private:
    std::uint64_t state_;
};

struct MmooGenStats {
    std::int64_t onDwells = 0;   // completed On dwells
    double onDwellSlotSum = 0.0;
    std::int64_t offDwells = 0;
    double offDwellSlotSum = 0.0;
};

// Aggregate per-slot arrivals (bits) of nFlows independent on-off sources.
// Dwell times are geometric in slots with success probability
// 1 - exp(-rate * slot), the discretized exponential; an On slot contributes
// peakRate * slot bits. Initial states are stationary: On with probability
// offExitRate / (offExitRate + onExitRate). Dwells truncated by the horizon
// are excluded from stats.
std::vector<float> generateMmoo(const MmooParams& params, int nFlows, std::int64_t horizonSlots,
                                double slot, const StreamKey& key, MmooGenStats* stats = nullptr);

struct SimConfig {
    double slot = 1e-4;           // seconds
    std::int64_t horizonSlots = 0;
    int hops = 1;
    double capacity = 0.0;        // bits/second per hop
    MmooParams through{1.0, 1.0, 1.0};
    int throughCount = 1;
    MmooParams cross{1.0, 1.0, 1.0};
    int crossCount = 0;           // 0 disables cross traffic
    std::uint64_t seed = 1;
    int replications = 1;
    double warmupFraction = 0.1;
    bool recordBacklog = false;

    void validate() const;
    // Mean offered load (through + cross) over capacity.
    double meanUtilization() const;
};

struct TandemTrace {
    double slot;
    int hops;
    double capacity;
    std::int64_t horizonSlots;
    std::int64_t warmupSlots;
    // Cumulative through-traffic bits at slot boundaries, horizon+1 entries:
    // index 0 is the ingress arrival process, index h >= 1 the departures of
    // hop h (which are the arrivals of hop h+1).
    std::vector<std::vector<double>> cumulativeThrough;
    // Per-slot cross arrivals per hop, bits.
    std::vector<std::vector<float>> crossArrivals;
    // Per-slot total backlog (through + cross) per hop, filled only when
    // SimConfig::recordBacklog is set.
    std::vector<std::vector<float>> backlog;
};

// One replication: fluid FIFO recursion per slot and hop. The queue drains
// min(backlog + arrivals, C * slot) bits; departures are attributed to the
// through and cross shares in proportion to the queued composition; through
// departures feed the next hop within the same slot, cross departures exit.
TandemTrace runTandem(const SimConfig& cfg, int replication = 0);

class EmpiricalCcdf {
public:
    explicit EmpiricalCcdf(std::vector<double> samples);
    std::int64_t count() const { return static_cast<std::int64_t>(sorted_.size()); }
    double ccdf(double x) const; // P(X > x)
    // Smallest sample v with ccdf(v) <= p; requires p >= 1/count.
    double quantile(double p) const;
    double maxSample() const { return sorted_.back(); }

private:
    std::vector<double> sorted_;
};

// End-to-end virtual delay of the through aggregate, one sample per slot
// boundary after the warm-up: W(t) = min { d >= 0 : A(t) <= D(t + d) },
// computed by a linear two-pointer scan. Samples whose departure lies past
// the horizon are dropped.
EmpiricalCcdf virtualDelaySamples(const TandemTrace& trace);

// Fraction of sliding windows of windowSlots slots whose arrival sum exceeds
// threshold bits.
double windowViolationFrequency(const std::vector<float>& perSlot, std::int64_t windowSlots,
                                double threshold);

// Worst slack of hop h's realized through departures against the min-plus
// service floor min over k of [A(k) + C (t-k) slot - crossArrivals(k, t)],
// evaluated for every t via the running recursion
// R(t) = min(A(t), R(t-1) + C slot - cross(t-1, t]). Non-negative up to
// rounding when the hop is work conserving.
double dynamicServerWorstSlack(const TandemTrace& trace, int hop);

// Runs f(replication) for every replication index on up to `parallelism`
// worker threads; f must not share mutable state across calls.
void forEachReplication(int replications, int parallelism, const std::function<void(int)>& f);

} // namespace snc

#endif // SNC_SIM_HPP
