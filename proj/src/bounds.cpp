// bounds.cpp - Performance-bound evaluation and the theta/delta optimizer.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool sameDecay(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

struct ActiveTerm {
    double amplitude;
    double decay;
    std::size_t index; // position in the caller's term list
};

std::vector<ActiveTerm> activeTerms(const std::vector<ExpError>& terms) {
    std::vector<ActiveTerm> act;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!terms[i].isZero()) act.push_back({terms[i].amplitude, terms[i].decay, i});
    }
    return act;
}

} // namespace

double partitionInfimum(const std::vector<ExpError>& terms, double sigma,
                        std::vector<double>* sigmaShares) {
    if (terms.empty()) throw std::invalid_argument("partition needs at least one term");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (sigmaShares) sigmaShares->assign(terms.size(), 0.0);

    std::vector<ActiveTerm> act = activeTerms(terms);
    if (act.empty()) return 0.0;
    if (act.size() == 1) {
        if (sigmaShares) (*sigmaShares)[act[0].index] = sigma;
        return std::min(1.0, act[0].amplitude * std::exp(-act[0].decay * sigma));
    }

    // Equal-marginal split: sigma_i = max(0, (ln(a_i theta_i) - t)/theta_i)
    // with the multiplier t = ln(lambda) found by bisection.
    std::vector<double> logAT(act.size());
    double tHi = -kInf;
    double maxDecay = 0.0;
    for (std::size_t i = 0; i < act.size(); ++i) {
        logAT[i] = std::log(act[i].amplitude * act[i].decay);
        tHi = std::max(tHi, logAT[i]);
        maxDecay = std::max(maxDecay, act[i].decay);
    }
    double tLo = tHi - maxDecay * sigma - 1.0;
    auto shareSum = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < act.size(); ++i)
            s += std::max(0.0, (logAT[i] - t) / act[i].decay);
        return s;
    };
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (tLo + tHi);
        if (shareSum(mid) > sigma)
            tLo = mid;
        else
            tHi = mid;
    }
    double t = tHi;
    std::vector<double> shares(act.size());
    double total = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < act.size(); ++i) {
        shares[i] = std::max(0.0, (logAT[i] - t) / act[i].decay);
        total += shares[i];
        if (shares[i] > shares[largest]) largest = i;
    }
    shares[largest] += sigma - total; // absorb the bisection residual
    if (shares[largest] < 0.0) shares[largest] = 0.0;

    double value = 0.0;
    for (std::size_t i = 0; i < act.size(); ++i) {
        value += act[i].amplitude * std::exp(-act[i].decay * shares[i]);
        if (sigmaShares) (*sigmaShares)[act[i].index] = shares[i];
    }
    return std::min(1.0, value);
}

double partitionQuantile(const std::vector<ExpError>& terms, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    std::vector<ActiveTerm> act = activeTerms(terms);
    if (act.empty()) return 0.0;

    bool equalDecay = true;
    for (const auto& a : act) equalDecay = equalDecay && sameDecay(a.decay, act[0].decay);
    if (equalDecay) {
        // n * geomMean(a) * exp(-theta sigma / n) = epsilon, valid while every
        // implied share stays non-negative.
        double n = static_cast<double>(act.size());
        double theta = act[0].decay;
        double meanLogA = 0.0;
        for (const auto& a : act) meanLogA += std::log(a.amplitude);
        meanLogA /= n;
        double sigma = n / theta * (std::log(n) + meanLogA - std::log(epsilon));
        if (sigma >= 0.0) {
            bool interior = true;
            for (const auto& a : act)
                interior = interior && sigma / n + (std::log(a.amplitude) - meanLogA) / theta >= 0.0;
            if (interior) return sigma;
        }
    }

    if (partitionInfimum(terms, 0.0) <= epsilon) return 0.0;
    double hi = 0.0;
    double n = static_cast<double>(act.size());
    for (const auto& a : act)
        hi = std::max(hi, n * std::log(std::max(1.0, n * a.amplitude / epsilon)) / a.decay);
    hi = std::max(hi, 1.0);
    while (partitionInfimum(terms, hi) > epsilon) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (partitionInfimum(terms, mid) > epsilon)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

namespace {

std::vector<ExpError> boundTerms(const ArrivalBound& arr, const NetworkService& net) {
    std::vector<ExpError> terms;
    terms.reserve(net.errorTerms.size() + 1);
    terms.push_back(tailSum(arr.second, net.delta, net.slot));
    terms.insert(terms.end(), net.errorTerms.begin(), net.errorTerms.end());
    return terms;
}

void checkBoundStability(const ArrivalBound& arr, const NetworkService& net) {
    if (arr.first.hasInfiniteTail())
        throw std::invalid_argument("arrival curve must have a finite tail");
    if (net.curve.hasInfiniteTail()) return;
    double as = arr.first.terminalSlope() + net.delta;
    double ss = net.curve.terminalSlope() - net.delta;
    if (as > ss * (1.0 + 1e-12) + 1e-12)
        throw StabilityError("arrival rate plus rate correction exceeds corrected service rate");
}

} // namespace

double backlogBound(const ArrivalBound& arr, const NetworkService& net, double sigma) {
    return std::min(1.0, partitionInfimum(boundTerms(arr, net), sigma));
}

double backlogQuantile(const ArrivalBound& arr, const NetworkService& net, double epsilon) {
    checkBoundStability(arr, net);
    double sigmaStar = partitionQuantile(boundTerms(arr, net), epsilon);
    double base = deconvolveAt(arr.first.plusRate(net.delta), net.curve.plusRate(-net.delta), 0.0);
    return base + sigmaStar;
}

double delayBound(const ArrivalBound& arr, const NetworkService& net, double sigma) {
    return backlogBound(arr, net, sigma);
}

double delayQuantile(const ArrivalBound& arr, const NetworkService& net, double epsilon) {
    checkBoundStability(arr, net);
    double sigmaStar = partitionQuantile(boundTerms(arr, net), epsilon);
    return horizontalDeviation(arr.first.plusRate(net.delta), net.curve.plusRate(-net.delta),
                               sigmaStar);
}

double OutputEnvelope::errorAt(double sigma) const {
    return std::min(1.0, partitionInfimum(errorTerms, sigma));
}

OutputEnvelope outputEnvelope(const ArrivalBound& arr, const NetworkService& net) {
    checkBoundStability(arr, net);
    double intercept =
        deconvolveAt(arr.first.plusRate(net.delta), net.curve.plusRate(-net.delta), 0.0);
    double slope = arr.first.terminalSlope() + net.delta;
    return {Curve::affine(intercept, slope), boundTerms(arr, net), net.delta, net.slot};
}

std::vector<ExpError> downstreamArrivalTerms(const OutputEnvelope& out) {
    double rate = out.delta / static_cast<double>(out.errorTerms.size());
    std::vector<ExpError> terms;
    terms.reserve(out.errorTerms.size());
    for (const auto& t : out.errorTerms) terms.push_back(tailSum(t, rate, out.slot));
    return terms;
}

namespace {

// Complementary function 1 - min(1, a exp(-theta x)) sampled on the grid.
std::vector<double> complementaryGrid(const ExpError& e, const std::vector<double>& xs) {
    std::vector<double> c(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k)
        c[k] = std::max(0.0, 1.0 - e.amplitude * std::exp(-e.decay * xs[k]));
    return c;
}

// One Stieltjes fold: R'(x) = integral over [0, x] of R(x - u) dC(u), with
// the increment of C taken exactly per cell and R interpolated by trapezoid.
std::vector<double> foldOnce(const std::vector<double>& R, const ExpError& e,
                             const std::vector<double>& xs) {
    std::vector<double> c = complementaryGrid(e, xs);
    std::vector<double> out(xs.size());
    out[0] = R[0] * c[0];
    for (std::size_t k = 1; k < xs.size(); ++k) {
        double acc = R[k] * c[0];
        for (std::size_t j = 1; j <= k; ++j)
            acc += 0.5 * (R[k - j] + R[k - j + 1]) * (c[j] - c[j - 1]);
        out[k] = acc;
    }
    return out;
}

double foldEval(const std::vector<ActiveTerm>& act, double sigma, int points) {
    double sigmaMax = sigma;
    for (const auto& a : act)
        sigmaMax = std::max(sigmaMax, (std::max(0.0, std::log(a.amplitude)) + 27.7) / a.decay);
    sigmaMax = std::max(sigmaMax, 1e-30);
    std::vector<double> xs(points);
    for (int k = 0; k < points; ++k)
        xs[k] = sigmaMax * static_cast<double>(k) / static_cast<double>(points - 1);

    std::vector<double> R = complementaryGrid(ExpError(act[0].amplitude, act[0].decay), xs);
    for (std::size_t i = 1; i < act.size(); ++i)
        R = foldOnce(R, ExpError(act[i].amplitude, act[i].decay), xs);

    double step = xs[1] - xs[0];
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(sigma / step), xs.size() - 2);
    double w = (sigma - xs[idx]) / step;
    w = std::clamp(w, 0.0, 1.0);
    double r = (1.0 - w) * R[idx] + w * R[idx + 1];
    return std::clamp(1.0 - r, 0.0, 1.0);
}

} // namespace

double independentError(const std::vector<ExpError>& tailSummedTerms, double sigma,
                        int gridPoints, double* errorEstimate) {
    if (tailSummedTerms.empty()) throw std::invalid_argument("need at least one term");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (gridPoints < 64) throw std::invalid_argument("grid too small");
    std::vector<ActiveTerm> act = activeTerms(tailSummedTerms);
    if (act.empty()) return 0.0;
    if (act.size() == 1)
        return std::min(1.0, act[0].amplitude * std::exp(-act[0].decay * sigma));

    double fine = foldEval(act, sigma, gridPoints);
    double coarse = foldEval(act, sigma, gridPoints / 2);
    double est = std::abs(fine - coarse);
    if (errorEstimate) *errorEstimate = est;
    if (est > std::max(1e-4, 0.05 * fine))
        throw QuadratureError("sigma grid too coarse: halving it moves the result by " +
                              std::to_string(est));
    return fine;
}

namespace {

// log of the upper regularized gamma tail Q(n, x) = e^-x sum_{k<n} x^k / k!
double logGammaTail(int n, double x) {
    if (x <= 0.0) return 0.0;
    double m = -kInf;
    std::vector<double> es(n);
    for (int k = 0; k < n; ++k) {
        es[k] = -x + k * std::log(x) - std::lgamma(k + 1.0);
        m = std::max(m, es[k]);
    }
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::exp(es[k] - m);
    return std::min(0.0, m + std::log(s));
}

// Terms as shifted exponentials: requires one decay and amplitudes >= 1.
struct ErlangForm {
    int n;
    double decay;
    double shiftSum;
};

ErlangForm erlangForm(const std::vector<ActiveTerm>& act) {
    ErlangForm f{static_cast<int>(act.size()), act[0].decay, 0.0};
    for (const auto& a : act) {
        if (!sameDecay(a.decay, f.decay))
            throw std::invalid_argument("exact independent bound needs one common decay");
        if (a.amplitude < 1.0 - 1e-12)
            throw std::invalid_argument("exact independent bound needs amplitudes >= 1");
        f.shiftSum += std::log(std::max(1.0, a.amplitude)) / f.decay;
    }
    return f;
}

} // namespace

double independentErrorExact(const std::vector<ExpError>& tailSummedTerms, double sigma) {
    if (tailSummedTerms.empty()) throw std::invalid_argument("need at least one term");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    std::vector<ActiveTerm> act = activeTerms(tailSummedTerms);
    if (act.empty()) return 0.0;
    ErlangForm f = erlangForm(act);
    double x = f.decay * (sigma - f.shiftSum);
    if (x <= 0.0) return 1.0;
    double lq = logGammaTail(f.n, x);
    return lq < -745.0 ? 0.0 : std::exp(lq);
}

double independentQuantileExact(const std::vector<ExpError>& tailSummedTerms, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    std::vector<ActiveTerm> act = activeTerms(tailSummedTerms);
    if (act.empty()) return 0.0;
    ErlangForm f = erlangForm(act);
    double target = std::log(epsilon);
    double hi = 1.0;
    while (logGammaTail(f.n, hi) > target) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (logGammaTail(f.n, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return std::max(0.0, f.shiftSum + hi / f.decay);
}

namespace {

struct ClosedFormPoint {
    double delta;
    double gamma;
};

ClosedFormPoint closedFormGamma(double theta, double slot, int hops, double capacity, double rho,
                                double rhoCross, double epsilon) {
    if (hops < 1) throw std::invalid_argument("need at least one hop");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    double margin = capacity - rho - rhoCross;
    if (!(margin > 0.0)) throw StabilityError("offered load reaches capacity");
    double delta = margin / 2.0;
    double pref = -std::expm1(-theta * delta * slot);
    double n = hops + 1.0;
    double gamma = n / theta * (std::log(n) - std::log(epsilon) - std::log(pref));
    return {delta, std::max(0.0, gamma)};
}

} // namespace

double closedFormBacklog(double theta, double slot, int hops, double capacity, double rho,
                         double rhoCross, double sigmaG, double sigmaCross, double epsilon) {
    ClosedFormPoint p = closedFormGamma(theta, slot, hops, capacity, rho, rhoCross, epsilon);
    return p.gamma + sigmaG + hops * sigmaCross;
}

double closedFormDelay(double theta, double slot, int hops, double capacity, double rho,
                       double rhoCross, double sigmaG, double sigmaCross, double epsilon) {
    ClosedFormPoint p = closedFormGamma(theta, slot, hops, capacity, rho, rhoCross, epsilon);
    return (p.gamma + sigmaG + hops * sigmaCross) / (capacity - rhoCross - p.delta);
}

namespace {

// Golden-section minimum of f over [lo, hi]; f may return +inf.
template <typename F>
std::pair<double, double> goldenMin(F&& f, double lo, double hi, int iters) {
    const double invPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invPhi * (b - a);
    double x2 = a + invPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invPhi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

class BoundEvaluator {
public:
    BoundEvaluator(const TrafficModel& through, const NetworkSpec& spec, Objective obj,
                   const BoundOptions& opts)
        : through_(through), spec_(spec), obj_(obj), opts_(opts) {}

    bool feasibleAt(double theta) const {
        if (!through_.coversTheta(theta) || !spec_.cross.coversTheta(theta)) return false;
        return spec_.capacity - through_.rho(theta) - spec_.cross.rho(theta) > 0.0;
    }

    double loadExcess(double theta) const {
        if (!through_.coversTheta(theta) || !spec_.cross.coversTheta(theta)) return kInf;
        return through_.rho(theta) + spec_.cross.rho(theta) - spec_.capacity;
    }

    // Objective value at theta under the configured delta policy; +inf when
    // infeasible. deltaOut receives the delta actually used.
    double evalTheta(double theta, double* deltaOut = nullptr) const {
        if (!feasibleAt(theta)) return kInf;
        double margin = spec_.capacity - through_.rho(theta) - spec_.cross.rho(theta);
        double deltaMid = margin / 2.0;
        if (opts_.deltaPolicy == DeltaPolicy::Midpoint ||
            opts_.method == BoundMethod::ClosedForm) {
            if (deltaOut) *deltaOut = deltaMid;
            return evalThetaDelta(theta, deltaMid);
        }
        auto [d, v] = goldenMin([&](double dd) { return evalThetaDelta(theta, dd); },
                                deltaMid * 1e-3, deltaMid, 48);
        if (deltaOut) *deltaOut = d;
        return v;
    }

    double evalThetaDelta(double theta, double delta) const {
        try {
            if (opts_.method == BoundMethod::ClosedForm) {
                double rho = through_.rho(theta);
                double rhoc = spec_.cross.rho(theta);
                double sg = through_.sigma(theta);
                double sc = spec_.cross.sigma(theta);
                switch (obj_) {
                    case Objective::Delay:
                        return closedFormDelay(theta, opts_.slot, spec_.hops, spec_.capacity, rho,
                                               rhoc, sg, sc, spec_.epsilon);
                    default:
                        return closedFormBacklog(theta, opts_.slot, spec_.hops, spec_.capacity,
                                                 rho, rhoc, sg, sc, spec_.epsilon);
                }
            }
            auto [arr, net] = buildPipeline(theta, delta);
            std::vector<ExpError> terms = boundTerms(arr, net);
            double sigmaStar = opts_.method == BoundMethod::Theorem3Independent
                                   ? independentQuantileExact(terms, spec_.epsilon)
                                   : partitionQuantile(terms, spec_.epsilon);
            switch (obj_) {
                case Objective::Delay:
                    return horizontalDeviation(arr.first.plusRate(delta),
                                               net.curve.plusRate(-delta), sigmaStar);
                default:
                    return deconvolveAt(arr.first.plusRate(delta), net.curve.plusRate(-delta),
                                        0.0) +
                           sigmaStar;
            }
        } catch (const StabilityError&) {
            return kInf;
        } catch (const DivergenceError&) {
            return kInf;
        }
    }

    std::pair<ArrivalBound, NetworkService> buildPipeline(double theta, double delta) const {
        ArrivalBound arr = arrivalEnvelope(through_, theta);
        ArrivalBound cross = arrivalEnvelope(spec_.cross, theta);
        ServiceEnvelope hop = leftoverService(constantRateService(spec_.capacity), cross.first,
                                              cross.second, through_.rho(theta));
        std::vector<ServiceEnvelope> hops(static_cast<std::size_t>(spec_.hops), hop);
        return {std::move(arr), composeNetwork(hops, delta, opts_.slot)};
    }

    BoundResult finalize(double theta, bool atEdge) const {
        double delta = 0.0;
        double value = evalTheta(theta, &delta);
        BoundResult r;
        r.objective = obj_;
        r.value = value;
        r.thetaStar = theta;
        r.deltaStar = delta;
        r.epsilonTarget = spec_.epsilon;
        r.method = opts_.method;
        r.thetaAtGridEdge = atEdge;
        r.outputSlope = through_.rho(theta) + delta;

        if (opts_.method == BoundMethod::ClosedForm) {
            ClosedFormPoint p =
                closedFormGamma(theta, opts_.slot, spec_.hops, spec_.capacity,
                                through_.rho(theta), spec_.cross.rho(theta), spec_.epsilon);
            double n = spec_.hops + 1.0;
            double pref = -std::expm1(-theta * p.delta * opts_.slot);
            r.achievedProbability = std::min(1.0, n / pref * std::exp(-theta * p.gamma / n));
            for (int i = 0; i <= spec_.hops; ++i) {
                r.breakdown.push_back({i == 0 ? "arrival" : "hop" + std::to_string(i),
                                       p.gamma / n, spec_.epsilon / n});
            }
            return r;
        }

        auto [arr, net] = buildPipeline(theta, delta);
        std::vector<ExpError> terms = boundTerms(arr, net);
        if (opts_.method == BoundMethod::Theorem3Independent) {
            double sigmaStar = independentQuantileExact(terms, spec_.epsilon);
            r.achievedProbability = independentErrorExact(terms, sigmaStar);
            return r;
        }
        double sigmaStar = partitionQuantile(terms, spec_.epsilon);
        std::vector<double> shares;
        double achieved = partitionInfimum(terms, sigmaStar, &shares);
        for (int bump = 0; achieved > spec_.epsilon + 1e-12 && bump < 4; ++bump) {
            sigmaStar *= 1.0 + 1e-12;
            achieved = partitionInfimum(terms, sigmaStar, &shares);
        }
        r.achievedProbability = achieved;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            double p = terms[i].isZero()
                           ? 0.0
                           : terms[i].amplitude * std::exp(-terms[i].decay * shares[i]);
            r.breakdown.push_back(
                {i == 0 ? "arrival" : "hop" + std::to_string(i), shares[i], p});
        }
        return r;
    }

private:
    const TrafficModel& through_;
    const NetworkSpec& spec_;
    Objective obj_;
    const BoundOptions& opts_;
};

} // namespace

BoundResult optimizeBound(const TrafficModel& through, const NetworkSpec& spec, Objective obj,
                          const BoundOptions& opts) {
    if (spec.hops < 1) throw std::invalid_argument("network must have at least one hop");
    if (!(spec.capacity > 0.0)) throw std::invalid_argument("capacity must be > 0");
    if (!(spec.epsilon > 0.0) || !(spec.epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (opts.thetaGrid.points < 2 || !(opts.thetaGrid.min > 0.0) ||
        !(opts.thetaGrid.max > opts.thetaGrid.min))
        throw std::invalid_argument("bad theta grid");

    BoundEvaluator ev(through, spec, obj, opts);

    double gmin = opts.thetaGrid.min;
    double gmax = opts.thetaGrid.max;
    int points = opts.thetaGrid.points;

    std::vector<double> thetas;
    std::vector<double> values;
    int best = -1;
    for (int round = 0; round < 8; ++round) {
        thetas.resize(points);
        values.assign(points, kInf);
        double l0 = std::log(gmin), l1 = std::log(gmax);
        for (int i = 0; i < points; ++i)
            thetas[i] = std::exp(l0 + (l1 - l0) * i / (points - 1));
        best = -1;
        for (int i = 0; i < points; ++i) {
            values[i] = ev.evalTheta(thetas[i]);
            if (best < 0 || values[i] < values[best]) best = i;
        }
        if (best < 0 || !std::isfinite(values[best])) {
            if (gmin > 1e-15) { // only smaller theta can reduce the load
                gmin = std::max(gmin / 100.0, 1e-15);
                continue;
            }
            double closest = thetas[0];
            double excess = kInf;
            for (int i = 0; i < points; ++i) {
                double e = ev.loadExcess(thetas[i]);
                if (e < excess) {
                    excess = e;
                    closest = thetas[i];
                }
            }
            throw InfeasibleError("no stable theta on the grid: offered load exceeds capacity "
                                  "(closest theta " + std::to_string(closest) + ")",
                                  closest, excess);
        }
        if (best == 0 && gmin > 1e-15) {
            gmin = std::max(gmin / 10.0, 1e-15);
        } else if (best == points - 1 && gmax < 1e4) {
            gmax = std::min(gmax * 10.0, 1e4);
        } else {
            break;
        }
    }

    bool atEdge = best == 0 || best == static_cast<int>(thetas.size()) - 1;
    double lo = thetas[std::max(0, best - 1)];
    double hi = thetas[std::min<int>(thetas.size() - 1, best + 1)];
    auto [lnTheta, refined] = goldenMin(
        [&](double lt) { return ev.evalTheta(std::exp(lt)); }, std::log(lo), std::log(hi), 72);
    double thetaStar = thetas[best];
    if (refined < values[best]) thetaStar = std::exp(lnTheta);
    return ev.finalize(thetaStar, atEdge);
}

} // namespace snc
