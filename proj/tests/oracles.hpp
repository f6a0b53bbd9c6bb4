// oracles.hpp - Test-only brute-force oracles for the min-plus operations:
// dense-grid infimum/supremum searches that stay independent of the exact
// breakpoint algorithms they check, plus random curve generators.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_TESTS_ORACLES_HPP
#define SNC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "snc/curve.hpp"

namespace oracle {

inline double maxFiniteSlope(const snc::Curve& c) {
    return c.hasInfiniteTail() ? c.maxSlope() : std::max(c.maxSlope(), c.terminalSlope());
}

// Grid infimum of f(k) + g(t-k) over k in [0, t]. Never below the exact
// convolution; above it by at most (maxSlope(f) + maxSlope(g)) * step.
inline double convolveAtGrid(const snc::Curve& f, const snc::Curve& g, double t,
                             int points = 2048) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= points; ++i) {
        double k = t * i / points;
        best = std::min(best, f.eval(k) + g.eval(t - k));
    }
    return best;
}

inline double convolveGridSlack(const snc::Curve& f, const snc::Curve& g, double t,
                                int points = 2048) {
    return (maxFiniteSlope(f) + maxFiniteSlope(g)) * (t / points) + 1e-9;
}

// Grid supremum of f(delta + u) - g(u) over u in [0, horizon]. Never above
// the exact deconvolution (when horizon covers the argmax); below it by at
// most the same slope-times-step slack.
inline double deconvolveAtGrid(const snc::Curve& f, const snc::Curve& g, double delta,
                               double horizon, int points = 2048) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= points; ++i) {
        double u = horizon * i / points;
        best = std::max(best, f.eval(delta + u) - g.eval(u));
    }
    return best;
}

inline double deconvolveGridSlack(const snc::Curve& f, const snc::Curve& g, double horizon,
                                  int points = 2048) {
    return (maxFiniteSlope(f) + maxFiniteSlope(g)) * (horizon / points) + 1e-9;
}

// For each t on a grid, bisects the smallest x with g(t + x) >= f(t) + sigma
// and returns the maximum over t. The bisection is on eval() only.
inline double horizontalDeviationGrid(const snc::Curve& f, const snc::Curve& g, double sigma,
                                      double horizon, int points = 512) {
    double worst = 0.0;
    for (int i = 0; i <= points; ++i) {
        double t = horizon * i / points;
        double need = f.eval(t) + sigma;
        if (g.eval(t) >= need) continue;
        double hi = 1.0;
        while (g.eval(t + hi) < need) {
            hi *= 2.0;
            if (hi > 1e12) return std::numeric_limits<double>::infinity();
        }
        double lo = 0.0;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g.eval(t + mid) < need)
                lo = mid;
            else
                hi = mid;
        }
        worst = std::max(worst, hi);
    }
    return worst;
}

// Default oracle horizon: ten times the largest intercept over the smallest
// positive slope gap, clamped past all breakpoints.
inline double defaultHorizon(const snc::Curve& f, const snc::Curve& g) {
    std::vector<double> slopes;
    auto collect = [&](const snc::Curve& c) {
        const auto& p = c.breakpoints();
        for (std::size_t i = 1; i < p.size(); ++i)
            slopes.push_back((p[i].value - p[i - 1].value) / (p[i].t - p[i - 1].t));
        if (!c.hasInfiniteTail()) slopes.push_back(c.terminalSlope());
    };
    collect(f);
    collect(g);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slopes.size(); ++i)
        for (std::size_t j = i + 1; j < slopes.size(); ++j) {
            double d = std::abs(slopes[i] - slopes[j]);
            if (d > 1e-12) gap = std::min(gap, d);
        }
    double intercept = 1.0;
    for (const auto& p : f.breakpoints()) intercept = std::max(intercept, std::abs(p.value));
    for (const auto& p : g.breakpoints()) intercept = std::max(intercept, std::abs(p.value));
    double h = std::isfinite(gap) ? 10.0 * intercept / gap : 10.0;
    return std::max({h, 10.0 * f.lastBreakTime() + 1.0, 10.0 * g.lastBreakTime() + 1.0});
}

// Random non-decreasing piecewise-linear curve.
inline snc::Curve randomCurve(std::mt19937_64& rng, int maxBreakpoints, double tScale = 4.0,
                              double vScale = 10.0, double slopeScale = 5.0,
                              bool strictlyIncreasing = false) {
    std::uniform_int_distribution<int> nDist(1, maxBreakpoints);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int n = nDist(rng);
    std::vector<double> ts{0.0};
    while (static_cast<int>(ts.size()) < n) {
        double t = tScale * u(rng);
        if (t > 1e-3) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    std::vector<double> dedup{ts.front()};
    for (double t : ts)
        if (t - dedup.back() > 1e-3) dedup.push_back(t);
    ts = dedup;
    std::vector<snc::Breakpoint> pts;
    double v = vScale * (2.0 * u(rng) - 1.0);
    for (double t : ts) {
        pts.push_back({t, v});
        double inc = vScale * u(rng);
        if (strictlyIncreasing) inc += 1e-3 * vScale;
        v += inc;
    }
    double slope = slopeScale * u(rng);
    if (strictlyIncreasing) slope += 1e-3 * slopeScale;
    return snc::Curve(std::move(pts), slope);
}

} // namespace oracle

#endif // SNC_TESTS_ORACLES_HPP
