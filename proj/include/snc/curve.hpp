// curve.hpp - Non-decreasing piecewise-linear curves and the min-plus
// operations (convolution, deconvolution, horizontal deviation) used by the
// envelope calculus.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_CURVE_HPP
#define SNC_CURVE_HPP

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace snc {

// Thrown when a min-plus result would be unbounded, e.g. deconvolving an
// arrival curve against a service curve with a smaller long-run rate.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Breakpoint {
    double t;     // seconds, >= 0
    double value; // bits, may be negative
};

// Non-decreasing piecewise-linear function of t >= 0: affine between
// breakpoints and extended past the last breakpoint with terminalSlope.
// A terminalSlope of kInfiniteSlope marks the burst-delay curve (+inf for
// t past the last breakpoint). It is the identity of convolve() and is
// accepted there and in deconvolveAt()'s second argument; it never appears
// in operation results.
class Curve {
public:
    static constexpr double kInfiniteSlope = std::numeric_limits<double>::infinity();

    // Throws std::invalid_argument unless breakpoint times are strictly
    // increasing starting at 0 and all segment slopes are >= 0.
    Curve(std::vector<Breakpoint> points, double terminalSlope);

    static Curve affine(double intercept, double slope) {
        return Curve({{0.0, intercept}}, slope);
    }
    static Curve burstDelayIdentity() { return Curve({{0.0, 0.0}}, kInfiniteSlope); }

    // Exact evaluation; throws std::invalid_argument for t < 0. Returns +inf
    // past the last breakpoint of an infinite-tail curve.
    double eval(double t) const;

    const std::vector<Breakpoint>& breakpoints() const { return points_; }
    double terminalSlope() const { return terminalSlope_; }
    bool hasInfiniteTail() const { return terminalSlope_ == kInfiniteSlope; }
    double lastBreakTime() const { return points_.back().t; }
    double valueAtOrigin() const { return points_.front().value; }

    // Largest finite segment slope (terminal slope included when finite).
    double maxSlope() const;

    // t -> f(t) + rate * t. Throws std::invalid_argument if a segment slope
    // would become negative.
    Curve plusRate(double rate) const;
    Curve plusConstant(double c) const;

    // Removes interior breakpoints that are collinear with their neighbours.
    Curve normalized() const;

private:
    std::vector<Breakpoint> points_;
    double terminalSlope_;
};

// Min-plus convolution f (x) g (t) = inf over 0 <= k <= t of f(k) + g(t-k).
// Exact for piecewise-linear inputs; infinite-tail inputs are supported
// (burst-delay curve acts as the identity).
Curve convolve(const Curve& f, const Curve& g);

// Stationary min-plus deconvolution evaluated at a single lag:
// f (/) g (delta) = sup over u in [0, horizon] of f(delta + u) - g(u).
// Exact for piecewise-linear inputs; with the default infinite horizon the
// supremum is over all u >= 0 and requires terminalSlope(f) <=
// terminalSlope(g), otherwise DivergenceError is thrown.
double deconvolveAt(const Curve& f, const Curve& g, double delta,
                    double horizon = std::numeric_limits<double>::infinity());

// Smallest x >= 0 such that f(t) + sigma <= g(t + x) for all t >= 0.
// Throws DivergenceError when no finite x works (terminalSlope(f) >
// terminalSlope(g), or f + sigma eventually exceeds a bounded g).
double horizontalDeviation(const Curve& f, const Curve& g, double sigma);

// Pointwise comparison on the union of breakpoints plus tail probes.
bool approxEqual(const Curve& a, const Curve& b, double relTol = 1e-9,
                 double absTol = 1e-9);

} // namespace snc

#endif // SNC_CURVE_HPP
