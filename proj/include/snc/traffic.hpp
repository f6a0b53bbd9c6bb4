// traffic.hpp - Traffic models: exponential violation-probability functions,
// Markov-modulated on-off effective bandwidth, and sigma/rho-constrained
// arrival envelopes for aggregates of independent flows.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_TRAFFIC_HPP
#define SNC_TRAFFIC_HPP

#include <utility>
#include <variant>
#include <vector>

#include "snc/curve.hpp"

namespace snc {

// Violation-probability function sigma -> min(1, amplitude * exp(-decay * sigma)).
// decay is in 1/bits, so the integral over sigma is amplitude/decay < inf and
// the finiteness condition on error functions always holds.
struct ExpError {
    double amplitude; // dimensionless, >= 0
    double decay;     // 1/bits, > 0

    ExpError(double amplitude, double decay);
    double eval(double sigma) const;
    bool isZero() const { return amplitude == 0.0; }
};

// Sums the exponential error over the discrete sample-path series
// sum over u >= 0 of e(sigma + delta * slot * u): a geometric series, so the
// result is again exponential with amplitude a / (1 - exp(-decay*delta*slot)).
// delta is the rate correction in bits/second, slot the time step in seconds.
ExpError tailSum(const ExpError& e, double delta, double slot);

// Markov-modulated on-off source: peak rate while On, exponential dwell times
// with rates onExitRate = 1/E[T_on] and offExitRate = 1/E[T_off].
struct MmooParams {
    double peakRate;    // bits/second
    double onExitRate;  // 1/seconds
    double offExitRate; // 1/seconds

    MmooParams(double peakRate, double onExitRate, double offExitRate);
    double meanRate() const { return peakRate * offExitRate / (offExitRate + onExitRate); }
};

// Effective bandwidth of an MMOO source at decay theta (1/bits):
//   (1/2theta) * (P theta - r10 - r01 + sqrt((P theta - r10 + r01)^2 + 4 r10 r01))
// Evaluated through the conjugate form for small P*theta to stay accurate as
// theta -> 0, where the direct form cancels catastrophically.
double mmooAlpha(const MmooParams& p, double theta);

// Tabulated sigma(theta)/rho(theta) description, linearly interpolated in
// theta. A single row is a theta-independent (sigma, rho) pair.
struct SigmaRhoTable {
    std::vector<double> theta; // 1/bits, strictly increasing (or one entry)
    std::vector<double> sigma; // bits
    std::vector<double> rho;   // bits/second

    SigmaRhoTable(std::vector<double> theta, std::vector<double> sigma, std::vector<double> rho);
    static SigmaRhoTable constant(double sigma, double rho);
    double sigmaAt(double th) const;
    double rhoAt(double th) const;
    bool covers(double th) const;
};

// One homogeneous class of `count` independent flows, described either by an
// MMOO model (sigma = 0, rho = count * alpha(theta)) or by an explicit
// sigma/rho table (both scaled by count).
struct TrafficModel {
    std::variant<MmooParams, SigmaRhoTable> kind;
    int count;

    TrafficModel(MmooParams p, int count);
    TrafficModel(SigmaRhoTable t, int count);
    double rho(double theta) const;
    double sigma(double theta) const;
    double meanRate() const;
    // False when theta falls outside a tabulated description's range.
    bool coversTheta(double theta) const;
};

// Statistical arrival envelope at decay theta: the affine curve
// rho(theta) * t + sigma(theta) with Chernoff error exp(-theta * sigma).
std::pair<Curve, ExpError> arrivalEnvelope(const TrafficModel& model, double theta);

} // namespace snc

#endif // SNC_TRAFFIC_HPP
