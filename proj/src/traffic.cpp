// traffic.cpp - MMOO effective bandwidth and arrival envelopes.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snc {

ExpError::ExpError(double amplitude, double decay) : amplitude(amplitude), decay(decay) {
    if (amplitude < 0.0 || std::isnan(amplitude))
        throw std::invalid_argument("error amplitude must be >= 0");
    if (!(decay > 0.0)) throw std::invalid_argument("error decay must be > 0");
}

double ExpError::eval(double sigma) const {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    return std::min(1.0, amplitude * std::exp(-decay * sigma));
}

ExpError tailSum(const ExpError& e, double delta, double slot) {
    if (!(delta > 0.0)) throw std::invalid_argument("rate correction delta must be > 0");
    if (!(slot > 0.0)) throw std::invalid_argument("slot must be > 0");
    double q = -std::expm1(-e.decay * delta * slot); // 1 - exp(-theta*delta*slot)
    return ExpError(e.amplitude / q, e.decay);
}

MmooParams::MmooParams(double peakRate, double onExitRate, double offExitRate)
    : peakRate(peakRate), onExitRate(onExitRate), offExitRate(offExitRate) {
    if (!(peakRate > 0.0) || !(onExitRate > 0.0) || !(offExitRate > 0.0))
        throw std::invalid_argument("MMOO parameters must be strictly positive");
}

double mmooAlpha(const MmooParams& p, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    double pt = p.peakRate * theta;
    double s = p.onExitRate + p.offExitRate;
    if (pt >= s) {
        double disc = (pt - p.onExitRate + p.offExitRate) * (pt - p.onExitRate + p.offExitRate) +
                      4.0 * p.onExitRate * p.offExitRate;
        return (pt - s + std::sqrt(disc)) / (2.0 * theta);
    }
    // conjugate form, exact rearrangement of the same root
    double q = std::sqrt((pt + s) * (pt + s) - 4.0 * pt * p.onExitRate);
    return 2.0 * p.peakRate * p.offExitRate / (q + s - pt);
}

SigmaRhoTable::SigmaRhoTable(std::vector<double> th, std::vector<double> sg, std::vector<double> rh)
    : theta(std::move(th)), sigma(std::move(sg)), rho(std::move(rh)) {
    if (theta.empty() || theta.size() != sigma.size() || theta.size() != rho.size())
        throw std::invalid_argument("sigma/rho table columns must be non-empty and equally sized");
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!(theta[i] > 0.0)) throw std::invalid_argument("table theta must be > 0");
        if (i > 0 && theta[i] <= theta[i - 1])
            throw std::invalid_argument("table theta must be strictly increasing");
        if (sigma[i] < 0.0 || rho[i] < 0.0)
            throw std::invalid_argument("table sigma/rho must be >= 0");
    }
}

SigmaRhoTable SigmaRhoTable::constant(double sg, double rh) {
    return SigmaRhoTable({1.0}, {sg}, {rh});
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.size() == 1) return ys.front();
    if (x < xs.front() || x > xs.back())
        throw std::invalid_argument("theta outside the tabulated sigma/rho range");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i == 0) return ys.front();
    double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}
} // namespace

double SigmaRhoTable::sigmaAt(double th) const { return interp(theta, sigma, th); }
double SigmaRhoTable::rhoAt(double th) const { return interp(theta, rho, th); }
bool SigmaRhoTable::covers(double th) const {
    return theta.size() == 1 || (th >= theta.front() && th <= theta.back());
}

TrafficModel::TrafficModel(MmooParams p, int n) : kind(p), count(n) {
    if (count < 1) throw std::invalid_argument("flow count must be >= 1");
}

TrafficModel::TrafficModel(SigmaRhoTable t, int n) : kind(std::move(t)), count(n) {
    if (count < 1) throw std::invalid_argument("flow count must be >= 1");
}

// Independent homogeneous flows add their effective bandwidths; the burst
// terms add as well while the Chernoff amplitude stays 1.
double TrafficModel::rho(double theta) const {
    if (const auto* p = std::get_if<MmooParams>(&kind)) return count * mmooAlpha(*p, theta);
    return count * std::get<SigmaRhoTable>(kind).rhoAt(theta);
}

double TrafficModel::sigma(double theta) const {
    if (std::holds_alternative<MmooParams>(kind)) return 0.0;
    return count * std::get<SigmaRhoTable>(kind).sigmaAt(theta);
}

double TrafficModel::meanRate() const {
    if (const auto* p = std::get_if<MmooParams>(&kind)) return count * p->meanRate();
    return count * std::get<SigmaRhoTable>(kind).rho.front();
}

bool TrafficModel::coversTheta(double theta) const {
    if (!(theta > 0.0)) return false;
    if (std::holds_alternative<MmooParams>(kind)) return true;
    return std::get<SigmaRhoTable>(kind).covers(theta);
}

std::pair<Curve, ExpError> arrivalEnvelope(const TrafficModel& model, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    return {Curve::affine(model.sigma(theta), model.rho(theta)), ExpError(1.0, theta)};
}

} // namespace snc
