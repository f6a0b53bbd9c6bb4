// test_minplus.cpp - Min-plus curve algebra against closed forms and the
// brute-force grid oracles.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "snc/curve.hpp"

using snc::Curve;

TEST_CASE("curve construction enforces the invariants") {
    CHECK_THROWS_AS(Curve({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Curve({{1.0, 0.0}}, 1.0), std::invalid_argument);          // first t != 0
    CHECK_THROWS_AS(Curve({{0.0, 0.0}, {0.0, 1.0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Curve({{0.0, 5.0}, {1.0, 4.0}}, 1.0), std::invalid_argument); // decreasing
    CHECK_THROWS_AS(Curve({{0.0, 0.0}}, -1.0), std::invalid_argument);
    CHECK_NOTHROW(Curve({{0.0, -3.0}, {1.0, -1.0}}, 0.0)); // negative values allowed
}

TEST_CASE("eval: affine, origin and flat extension") {
    Curve affine = Curve::affine(2.0, 5.0);
    CHECK(affine.eval(3.0) == doctest::Approx(17.0));
    CHECK(affine.eval(0.0) == doctest::Approx(2.0));

    Curve twoSeg({{0.0, 0.0}, {1.0, 1e6}}, 0.0);
    CHECK(twoSeg.eval(2.0) == doctest::Approx(1e6));
    CHECK(twoSeg.eval(0.5) == doctest::Approx(5e5));

    CHECK_THROWS_AS(affine.eval(-1.0), std::invalid_argument);
}

TEST_CASE("convolution of affine curves keeps the smaller rate and adds bursts") {
    Curve f = Curve::affine(2.0, 5.0);
    Curve g = Curve::affine(4.0, 3.0);
    Curve c = convolve(f, g);
    CHECK(approxEqual(c, Curve::affine(6.0, 3.0)));
    for (double t : {0.0, 0.5, 1.0, 4.0}) {
        double grid = oracle::convolveAtGrid(f, g, t);
        CHECK(c.eval(t) <= grid + 1e-12);
        CHECK(grid <= c.eval(t) + oracle::convolveGridSlack(f, g, t));
    }
}

TEST_CASE("burst-delay curve is the convolution identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        Curve f = oracle::randomCurve(rng, 5);
        CHECK(approxEqual(convolve(f, Curve::burstDelayIdentity()), f));
        CHECK(approxEqual(convolve(Curve::burstDelayIdentity(), f), f));
    }
}

TEST_CASE("convolution of a rate with itself splits symmetrically") {
    Curve c = Curve::affine(0.0, 7.5e6);
    CHECK(approxEqual(convolve(c, c), c));
}

TEST_CASE("convolution is commutative and associative") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        Curve f = oracle::randomCurve(rng, 4);
        Curve g = oracle::randomCurve(rng, 4);
        Curve h = oracle::randomCurve(rng, 3);
        CHECK(approxEqual(convolve(f, g), convolve(g, f), 1e-9, 1e-7));
        CHECK(approxEqual(convolve(convolve(f, g), h), convolve(f, convolve(g, h)), 1e-9, 1e-7));
    }
}

TEST_CASE("convolution lies below both one-sided splits") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        Curve f = oracle::randomCurve(rng, 5);
        Curve g = oracle::randomCurve(rng, 5);
        Curve c = convolve(f, g);
        for (int k = 0; k <= 20; ++k) {
            double t = 8.0 * k / 20.0;
            double cap = std::min(f.eval(t) + g.eval(0.0), f.eval(0.0) + g.eval(t));
            CHECK(c.eval(t) <= cap + 1e-9 * (1.0 + std::abs(cap)));
        }
    }
}

TEST_CASE("convolution matches the grid oracle on random pairs") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        Curve f = oracle::randomCurve(rng, 6);
        Curve g = oracle::randomCurve(rng, 6);
        Curve c = convolve(f, g);
        for (double t : {0.3, 1.7, 5.0, 11.0}) {
            double grid = oracle::convolveAtGrid(f, g, t);
            CHECK(c.eval(t) <= grid + 1e-9 * (1.0 + std::abs(grid)));
            CHECK(grid <= c.eval(t) + oracle::convolveGridSlack(f, g, t));
        }
    }
}

TEST_CASE("deconvolution: affine closed forms") {
    // rate-corrected arrival against a composed service: sigma_g + H sigma_c
    double sigma = 1000.0;
    int H = 3;
    double rho = 5e6, rhoc = 3e6, C = 1e7;
    double delta = (C - rho - rhoc) / 2.0;
    Curve gd = Curve::affine(sigma, rho + delta);
    Curve sd = Curve::affine(-H * sigma, (C - rhoc) - delta);
    CHECK(deconvolveAt(gd, sd, 0.0) == doctest::Approx((H + 1) * sigma));

    // identical affine curves: increments cancel, value rho * lag
    Curve f = Curve::affine(3.0, 2.0);
    CHECK(deconvolveAt(f, f, 1.5) == doctest::Approx(2.0 * 1.5));

    Curve g = Curve::affine(-4.0, 5.0); // 5t - 4
    Curve f2 = Curve::affine(3.0, 2.0); // 2t + 3
    CHECK(deconvolveAt(f2, g, 1.0) == doctest::Approx(9.0));
    double grid = oracle::deconvolveAtGrid(f2, g, 1.0, 50.0);
    CHECK(grid <= 9.0 + 1e-9);
    CHECK(9.0 <= grid + oracle::deconvolveGridSlack(f2, g, 50.0));
}

TEST_CASE("deconvolution diverges when the arrival outruns the service") {
    Curve f = Curve::affine(0.0, 6.0);
    Curve g = Curve::affine(0.0, 5.0);
    CHECK_THROWS_AS(deconvolveAt(f, g, 0.0), snc::DivergenceError);
    // finite horizon keeps it finite
    CHECK(deconvolveAt(f, g, 0.0, 10.0) == doctest::Approx(10.0));
}

TEST_CASE("deconvolution against the burst-delay curve is a passthrough") {
    Curve f = Curve::affine(2.0, 3.0);
    CHECK(deconvolveAt(f, Curve::burstDelayIdentity(), 1.0) == doctest::Approx(f.eval(1.0)));
}

TEST_CASE("horizontal deviation: closed forms") {
    double sigma = 500.0, sigmaTheta = 1000.0;
    int H = 3;
    double rho = 5e6, rhoc = 3e6, C = 1e7;
    double delta = (C - rho - rhoc) / 2.0;
    Curve gd = Curve::affine(sigmaTheta, rho + delta);
    Curve sd = Curve::affine(-H * sigmaTheta, (C - rhoc) - delta);
    double expect = (sigma + (H + 1) * sigmaTheta) / ((C - rhoc) - delta);
    CHECK(horizontalDeviation(gd, sd, sigma) == doctest::Approx(expect));

    Curve lin = Curve::affine(0.0, 4.0);
    CHECK(horizontalDeviation(lin, lin, 0.0) == doctest::Approx(0.0));

    Curve f = Curve::affine(1.0, 1.0);
    Curve g = Curve::affine(0.0, 2.0);
    CHECK(horizontalDeviation(f, g, 1.0) == doctest::Approx(1.0));
    double grid = oracle::horizontalDeviationGrid(f, g, 1.0, 20.0);
    CHECK(std::abs(grid - 1.0) < 1e-6);
}

TEST_CASE("horizontal deviation satisfies its defining inequality tightly") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 25; ++i) {
        Curve f = oracle::randomCurve(rng, 4, 4.0, 10.0, 3.0, true);
        Curve g = oracle::randomCurve(rng, 4, 4.0, 10.0, 3.0, true);
        if (f.terminalSlope() > g.terminalSlope()) std::swap(f, g);
        double sigma = 2.0;
        double d = horizontalDeviation(f, g, sigma);
        for (int k = 0; k <= 400; ++k) {
            double t = 20.0 * k / 400.0;
            CHECK(f.eval(t) + sigma <= g.eval(t + d) + 1e-7 * (1.0 + std::abs(g.eval(t + d))));
        }
        // minimality: the per-t bisection oracle reaches d up to its grid slack
        double horizon = oracle::defaultHorizon(f, g);
        double grid = oracle::horizontalDeviationGrid(f, g, sigma, horizon, 512);
        double minSlopeG = g.terminalSlope();
        for (std::size_t b = 1; b < g.breakpoints().size(); ++b) {
            const auto& p = g.breakpoints();
            minSlopeG = std::min(minSlopeG, (p[b].value - p[b - 1].value) / (p[b].t - p[b - 1].t));
        }
        double slack = (horizon / 512.0) * (1.0 + f.maxSlope() / minSlopeG) + 1e-6;
        CHECK(grid <= d + 1e-9 * (1.0 + d));
        CHECK(d <= grid + slack);
    }
}

TEST_CASE("horizontal deviation is monotone in sigma and antitone in g") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 25; ++i) {
        Curve f = oracle::randomCurve(rng, 4, 4.0, 10.0, 3.0, true);
        Curve g = oracle::randomCurve(rng, 4, 4.0, 10.0, 3.0, true);
        if (f.terminalSlope() > g.terminalSlope()) std::swap(f, g);
        double d1 = horizontalDeviation(f, g, 1.0);
        double d2 = horizontalDeviation(f, g, 3.0);
        CHECK(d2 >= d1 - 1e-12);
        Curve gUp = g.plusConstant(2.5);
        CHECK(horizontalDeviation(f, gUp, 1.0) <= d1 + 1e-12);
    }
}

TEST_CASE("horizontal deviation divergence cases") {
    CHECK_THROWS_AS(horizontalDeviation(Curve::affine(0.0, 3.0), Curve::affine(0.0, 2.0), 1.0),
                    snc::DivergenceError);
    // both bounded, demand exceeds supply
    Curve fFlat({{0.0, 0.0}, {1.0, 5.0}}, 0.0);
    Curve gFlat({{0.0, 0.0}, {1.0, 5.5}}, 0.0);
    CHECK_THROWS_AS(horizontalDeviation(fFlat, gFlat, 1.0), snc::DivergenceError);
    CHECK(horizontalDeviation(fFlat, gFlat, 0.25) > 0.0);
}

TEST_CASE("exact operations match the grid oracles on random pairs") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        Curve f = oracle::randomCurve(rng, 6);
        Curve g = oracle::randomCurve(rng, 6);
        if (f.terminalSlope() > g.terminalSlope()) std::swap(f, g);
        double horizon = oracle::defaultHorizon(f, g);
        for (double delta : {0.0, 0.8}) {
            double exact = deconvolveAt(f, g, delta);
            double grid = oracle::deconvolveAtGrid(f, g, delta, horizon);
            CHECK(grid <= exact + 1e-9 * (1.0 + std::abs(exact)));
            CHECK(exact <= grid + oracle::deconvolveGridSlack(f, g, horizon));
        }
    }
}
