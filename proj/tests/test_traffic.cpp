// test_traffic.cpp - Effective bandwidth, envelopes and geometric tail sums.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "snc/traffic.hpp"

using namespace snc;

namespace {
const MmooParams kHighBurst(1.5e6, 1.0 / 10e-3, 1.0 / 90e-3);
const MmooParams kLowBurst(1.5e6, 1.0 / 1e-3, 1.0 / 9e-3);
} // namespace

TEST_CASE("effective bandwidth limits: mean rate and peak rate") {
    for (const auto& p : {kHighBurst, kLowBurst}) {
        CHECK(mmooAlpha(p, 1e-12) == doctest::Approx(0.15e6).epsilon(1e-6));
        CHECK(mmooAlpha(p, 1e3) == doctest::Approx(1.5e6).epsilon(1e-6));
        CHECK(p.meanRate() == doctest::Approx(0.15e6));
    }
}

TEST_CASE("effective bandwidth at a fixed decay matches the precomputed value") {
    // low-burstiness variant at theta = 1e-5 per bit, evaluated independently
    // at two precisions before the build
    CHECK(mmooAlpha(kLowBurst, 1e-5) == doctest::Approx(151842.3670149147).epsilon(1e-9));
}

TEST_CASE("effective bandwidth sits strictly between mean and peak") {
    for (double theta : {1e-8, 1e-6, 1e-4, 1e-2, 1.0}) {
        double a = mmooAlpha(kHighBurst, theta);
        CHECK(a > kHighBurst.meanRate());
        CHECK(a < kHighBurst.peakRate);
    }
}

TEST_CASE("effective bandwidth is monotone in theta and in the peak rate") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        MmooParams p(1e5 + 1e7 * u(rng), 1.0 / (1e-4 + 0.1 * u(rng)),
                     1.0 / (1e-4 + 0.1 * u(rng)));
        double t1 = std::pow(10.0, -9.0 + 8.0 * u(rng));
        double t2 = t1 * (1.0 + u(rng));
        CHECK(mmooAlpha(p, t2) >= mmooAlpha(p, t1) * (1.0 - 1e-12));
        MmooParams bigger(p.peakRate * (1.0 + u(rng)), p.onExitRate, p.offExitRate);
        CHECK(mmooAlpha(bigger, t1) >= mmooAlpha(p, t1) * (1.0 - 1e-12));
    }
}

TEST_CASE("effective bandwidth rejects non-positive theta") {
    CHECK_THROWS_AS(mmooAlpha(kHighBurst, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mmooAlpha(kHighBurst, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(MmooParams(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("arrival envelope of MMOO flows: additive rates, zero burst") {
    double theta = 1e-5;
    auto [c1, e1] = arrivalEnvelope(TrafficModel(kHighBurst, 1), theta);
    CHECK(c1.terminalSlope() == doctest::Approx(mmooAlpha(kHighBurst, theta)));
    CHECK(c1.valueAtOrigin() == 0.0);
    CHECK(e1.amplitude == 1.0);
    CHECK(e1.decay == theta);

    auto [c134, e134] = arrivalEnvelope(TrafficModel(kHighBurst, 134), theta);
    CHECK(c134.terminalSlope() == doctest::Approx(134.0 * mmooAlpha(kHighBurst, theta)));
    CHECK(e134.amplitude == 1.0);
}

TEST_CASE("arrival envelope of an explicit sigma/rho table is a passthrough") {
    TrafficModel m(SigmaRhoTable::constant(4000.0, 2e6), 1);
    auto [c, e] = arrivalEnvelope(m, 3e-6);
    CHECK(c.valueAtOrigin() == doctest::Approx(4000.0));
    CHECK(c.terminalSlope() == doctest::Approx(2e6));
    CHECK(e.eval(1e6) == doctest::Approx(std::exp(-3e-6 * 1e6)));

    // tabulated interpolation and range checks
    SigmaRhoTable tab({1e-6, 1e-5}, {100.0, 200.0}, {1e6, 2e6});
    TrafficModel mt(tab, 2);
    CHECK(mt.sigma(1e-6) == doctest::Approx(200.0));
    CHECK(mt.rho(1e-5) == doctest::Approx(4e6));
    CHECK(mt.sigma(5.5e-6) == doctest::Approx(2.0 * 150.0));
    CHECK(mt.coversTheta(2e-6));
    CHECK_FALSE(mt.coversTheta(1e-4));
    CHECK_THROWS_AS(mt.rho(1e-4), std::invalid_argument);
}

TEST_CASE("flow counts must be at least one") {
    CHECK_THROWS_AS(TrafficModel(kHighBurst, 0), std::invalid_argument);
}

TEST_CASE("tail sum of an exponential error is geometric") {
    double theta = 1e-6, slot = 1.0;
    double delta = std::log(2.0) / (theta * slot);
    ExpError e(1.0, theta);
    CHECK(tailSum(e, delta, slot).amplitude == doctest::Approx(2.0));

    // huge decay per step: only the first term survives
    CHECK(tailSum(ExpError(0.7, 1.0), 1e9, 1.0).amplitude == doctest::Approx(0.7));

    // theta*delta*slot = 10: 1/(1 - e^-10), against a 1e4-term partial sum
    ExpError e10(1.0, 1e-6);
    ExpError summed = tailSum(e10, 1e7, 1.0);
    CHECK(summed.amplitude == doctest::Approx(1.0000454019910097).epsilon(1e-12));
    double partial = 0.0;
    for (int u = 0; u < 10000; ++u) partial += std::exp(-1e-6 * (0.0 + 1e7 * 1.0 * u));
    CHECK(summed.amplitude == doctest::Approx(partial).epsilon(1e-12));

    CHECK_THROWS_AS(tailSum(e, 0.0, slot), std::invalid_argument);
    CHECK_THROWS_AS(tailSum(e, -1.0, slot), std::invalid_argument);
}

TEST_CASE("tail sum equals truncated partial sums within the geometric remainder") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double theta = std::pow(10.0, -7.0 + 3.0 * u(rng));
        double delta = std::pow(10.0, 5.0 + 2.0 * u(rng));
        double slot = 1e-4;
        double sigma = u(rng) * 2.0 / theta;
        double a = 0.1 + 2.0 * u(rng);
        ExpError e(a, theta);
        double full = tailSum(e, delta, slot).amplitude * std::exp(-theta * sigma);
        int U = 50;
        double partial = 0.0;
        for (int k = 0; k <= U; ++k) partial += a * std::exp(-theta * (sigma + delta * slot * k));
        double remainder = a * std::exp(-theta * (sigma + delta * slot * (U + 1))) /
                           -std::expm1(-theta * delta * slot);
        CHECK(partial <= full * (1.0 + 1e-12));
        CHECK(full <= partial + remainder * (1.0 + 1e-9));
    }
}

TEST_CASE("error function caps at one and decreases") {
    ExpError e(5.0, 1e-3);
    CHECK(e.eval(0.0) == 1.0);
    double prev = 2.0;
    for (double s = 0.0; s < 2e4; s += 500.0) {
        double v = e.eval(s);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK_THROWS_AS(ExpError(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ExpError(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(e.eval(-1.0), std::invalid_argument);
}
