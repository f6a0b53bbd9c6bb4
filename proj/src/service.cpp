// service.cpp - Leftover and composed statistical service envelopes.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/service.hpp"

#include <algorithm>
#include <cmath>

namespace snc {

namespace {

// Pointwise difference a - b of two finite-tail curves. Throws StabilityError
// if the result would be decreasing anywhere.
Curve curveDifference(const Curve& a, const Curve& b) {
    std::vector<double> ts;
    for (const auto& p : a.breakpoints()) ts.push_back(p.t);
    for (const auto& p : b.breakpoints()) ts.push_back(p.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<Breakpoint> pts;
    for (double t : ts) pts.push_back({t, a.eval(t) - b.eval(t)});
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].value < pts[i - 1].value - 1e-9 * (1.0 + std::abs(pts[i].value)))
            throw StabilityError("leftover service curve would be decreasing");
        pts[i].value = std::max(pts[i].value, pts[i - 1].value);
    }
    double term = a.terminalSlope() - b.terminalSlope();
    if (term < 0.0) throw StabilityError("cross-traffic rate exceeds aggregate service rate");
    return Curve(std::move(pts), term).normalized();
}

} // namespace

ServiceEnvelope constantRateService(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("service rate must be > 0");
    return {Curve::affine(0.0, rate), ExpError(0.0, 1.0), ServiceEnvelope::Kind::ConstantRate};
}

ServiceEnvelope leftoverService(const ServiceEnvelope& agg, const Curve& crossCurve,
                                const ExpError& crossError, double throughRate) {
    if (agg.curve.hasInfiniteTail() || crossCurve.hasInfiniteTail())
        throw std::invalid_argument("leftover service needs finite-tail curves");
    if (agg.curve.terminalSlope() < throughRate + crossCurve.terminalSlope())
        throw StabilityError("aggregate service rate below through plus cross load");

    Curve left = curveDifference(agg.curve, crossCurve);
    ExpError err(0.0, 1.0);
    if (agg.error.isZero()) {
        err = crossError;
    } else if (crossError.isZero()) {
        err = agg.error;
    } else if (std::abs(agg.error.decay - crossError.decay) <=
               1e-12 * std::max(agg.error.decay, crossError.decay)) {
        err = ExpError(2.0 * std::sqrt(agg.error.amplitude * crossError.amplitude),
                       agg.error.decay / 2.0);
    } else {
        throw std::invalid_argument(
            "leftover service with two stochastic error terms requires equal decay");
    }
    return {std::move(left), err, ServiceEnvelope::Kind::Leftover};
}

NetworkService composeNetwork(const std::vector<ServiceEnvelope>& hops, double delta,
                              double slot) {
    if (hops.empty()) throw std::invalid_argument("network must have at least one hop");
    if (!(delta > 0.0)) throw std::invalid_argument("rate correction delta must be > 0");
    if (!(slot > 0.0)) throw std::invalid_argument("slot must be > 0");

    Curve net = hops.front().curve;
    for (std::size_t h = 1; h < hops.size(); ++h) net = convolve(net, hops[h].curve);

    std::vector<ExpError> terms;
    terms.reserve(hops.size());
    for (const auto& hop : hops) terms.push_back(tailSum(hop.error, delta, slot));
    return {std::move(net), std::move(terms), delta, slot, static_cast<int>(hops.size())};
}

double samplePathError(const ExpError& e, double delta, double slot, double sigma) {
    return std::min(1.0, tailSum(e, delta, slot).eval(sigma));
}

} // namespace snc
