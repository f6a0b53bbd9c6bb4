// service.hpp - Statistical service envelopes: a curve S together with an
// error function bounding P{ realized service over a window < S - sigma }.
// Provides the constant-rate node, the leftover envelope under cross traffic,
// and min-plus composition of tandem hops into one network envelope.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_SERVICE_HPP
#define SNC_SERVICE_HPP

#include <vector>

#include "snc/curve.hpp"
#include "snc/traffic.hpp"

namespace snc {

// Thrown when a queue or network cannot keep up with its offered load.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ServiceEnvelope {
    enum class Kind { ConstantRate, Leftover, Composed };

    Curve curve;
    ExpError error;
    Kind kind;
};

// Work-conserving node at a fixed rate: curve C*t with a zero error function.
ServiceEnvelope constantRateService(double rate);

// Service left for the flow of interest after subtracting the cross-traffic
// envelope from the aggregate service: curve = agg - cross pointwise.
// throughRate is the long-run rate of the flow of interest, used for the
// stability check rate(agg) >= throughRate + rate(cross).
//
// Error combination: if either side has a zero error the other carries over
// unchanged. Two nonzero exponential errors with equal decay combine through
// the equal-marginal split into amplitude 2*sqrt(a1*a2) at decay theta/2
// (exact wherever the optimal split is interior; the cap at 1 covers the
// clamped region for amplitudes >= 1/2). Unequal decays are rejected.
ServiceEnvelope leftoverService(const ServiceEnvelope& agg, const Curve& crossCurve,
                                const ExpError& crossError, double throughRate = 0.0);

// Service offered by H tandem hops as a single envelope: the min-plus
// convolution of the hop curves, with one tail-summed error term per hop.
// The per-instant hop errors become sample-path errors via the rate
// correction delta: each term's amplitude is divided by
// (1 - exp(-decay*delta*slot)). The split of sigma across the terms is left
// to the bounds layer.
struct NetworkService {
    Curve curve;
    std::vector<ExpError> errorTerms;
    double delta; // bits/second
    double slot;  // seconds
    int hopCount;
};

NetworkService composeNetwork(const std::vector<ServiceEnvelope>& hops, double delta,
                              double slot);

// P{ sup over windows of (envelope shortfall beyond sigma with rate
// correction delta) } bounded by the geometric tail sum, capped at 1.
double samplePathError(const ExpError& e, double delta, double slot, double sigma);

} // namespace snc

#endif // SNC_SERVICE_HPP
