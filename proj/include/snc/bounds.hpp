// bounds.hpp - Probabilistic end-to-end performance bounds: backlog, delay
// and output burstiness of a flow crossing a composed network service, the
// optimal split of the violation budget across error terms, the
// independent-case refinement, closed-form specializations for affine
// envelopes, and the theta/delta optimizer.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_BOUNDS_HPP
#define SNC_BOUNDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "snc/curve.hpp"
#include "snc/service.hpp"
#include "snc/traffic.hpp"

namespace snc {

// No theta on the search grid satisfies the stability condition.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& msg, double closestTheta, double minExcessRate)
        : std::runtime_error(msg), closestTheta(closestTheta), minExcessRate(minExcessRate) {}

    double closestTheta;   // theta with the smallest load excess
    double minExcessRate;  // rho + rho_c - C at that theta, bits/second
};

// The numeric convolution grid is too coarse for the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// min over non-negative splits sigma_1 + ... + sigma_n = sigma of
// sum_i a_i exp(-theta_i sigma_i), capped at 1. Zero-amplitude terms are
// ignored. The optimal split equalizes marginals (KKT with clamping at 0),
// solved by bisection on the multiplier. Optional out-parameter receives the
// per-term sigma shares (same order as terms).
double partitionInfimum(const std::vector<ExpError>& terms, double sigma,
                        std::vector<double>* sigmaShares = nullptr);

// Smallest sigma with partitionInfimum(terms, sigma) <= epsilon. Closed form
// when all decays are equal and the optimal split is interior; bisection
// otherwise.
double partitionQuantile(const std::vector<ExpError>& terms, double epsilon);

using ArrivalBound = std::pair<Curve, ExpError>;

// P{ backlog > (arrival deconvolved against the network service at lag 0)
//   + sigma } for the rate-corrected envelopes; the probability splits sigma
// across the arrival sample-path term and the per-hop terms.
double backlogBound(const ArrivalBound& arr, const NetworkService& net, double sigma);
// Backlog value at target violation probability epsilon, in bits.
double backlogQuantile(const ArrivalBound& arr, const NetworkService& net, double epsilon);

// P{ delay > d(sigma) } with d(sigma) the horizontal deviation; numerically
// identical to backlogBound's probability.
double delayBound(const ArrivalBound& arr, const NetworkService& net, double sigma);
// Delay value at target violation probability epsilon, in seconds.
double delayQuantile(const ArrivalBound& arr, const NetworkService& net, double epsilon);

// Statistical arrival envelope of the departure traffic: affine curve with
// slope rho + delta and intercept equal to the lag-0 deconvolution, with the
// same partitioned error as the backlog/delay bounds.
struct OutputEnvelope {
    Curve curve;
    std::vector<ExpError> errorTerms; // already tail-summed
    double delta;
    double slot;

    double errorAt(double sigma) const;
};

OutputEnvelope outputEnvelope(const ArrivalBound& arr, const NetworkService& net);

// Error terms for reusing an output envelope as the arrival of a downstream
// analysis: each term is tail-summed again with the rate budget delta/n split
// evenly across the n terms, which keeps the sample-path argument valid.
std::vector<ExpError> downstreamArrivalTerms(const OutputEnvelope& out);

// Independent-case bound: 1 - (fold of the complementary functions
// 1 - term_i(.)) (sigma), computed by Stieltjes convolution on a uniform
// sigma grid. Terms must already be tail-summed. Throws QuadratureError when
// halving the grid changes the result by more than max(1e-4, 5%).
double independentError(const std::vector<ExpError>& tailSummedTerms, double sigma,
                        int gridPoints = 4096, double* errorEstimate = nullptr);

// Exact evaluation of the same bound when every term has the same decay and
// amplitude >= 1: each complementary function is the distribution of a
// shifted exponential, so the fold is a shifted Erlang tail.
double independentErrorExact(const std::vector<ExpError>& tailSummedTerms, double sigma);
// Smallest sigma with independentErrorExact(terms, sigma) <= epsilon.
double independentQuantileExact(const std::vector<ExpError>& tailSummedTerms, double epsilon);

// Closed forms for the affine instance (constant-rate hops, cross envelope
// rho_c t + sigma_c, through envelope rho t + sigma_g, all error decays equal
// to theta, delta fixed at (C - rho - rho_c)/2). Independent of the curve
// machinery; used as the cross-check code path.
double closedFormBacklog(double theta, double slot, int hops, double capacity, double rho,
                         double rhoCross, double sigmaG, double sigmaCross, double epsilon);
double closedFormDelay(double theta, double slot, int hops, double capacity, double rho,
                       double rhoCross, double sigmaG, double sigmaCross, double epsilon);

struct NetworkSpec {
    int hops;            // H >= 1
    double capacity;     // bits/second per hop
    TrafficModel cross;  // cross-traffic class, fresh at every hop
    double epsilon;      // target violation probability
};

enum class Objective { Delay, Backlog, OutputBurstiness };
enum class DeltaPolicy { Midpoint, Refine };
enum class BoundMethod { Theorem2, Theorem3Independent, ClosedForm };

struct ThetaGrid {
    double min = 1e-9; // 1/bits
    double max = 1e-2;
    int points = 200;
};

struct BoundOptions {
    ThetaGrid thetaGrid{};
    DeltaPolicy deltaPolicy = DeltaPolicy::Midpoint;
    double slot = 1e-4; // seconds, matches the simulator default
    BoundMethod method = BoundMethod::Theorem2;
};

struct BreakdownTerm {
    std::string name;       // "arrival" or "hop<h>"
    double sigmaShare;      // bits
    double probabilityShare;
};

struct BoundResult {
    Objective objective = Objective::Delay;
    double value = 0.0;        // seconds for Delay, bits otherwise
    double thetaStar = 0.0;    // 1/bits
    double deltaStar = 0.0;    // bits/second
    double epsilonTarget = 0.0;
    double achievedProbability = 0.0;
    double outputSlope = 0.0;  // bits/second, meaningful for OutputBurstiness
    std::vector<BreakdownTerm> breakdown;
    BoundMethod method = BoundMethod::Theorem2;
    bool thetaAtGridEdge = false;
};

// Sweeps a logarithmic theta grid (auto-extended while the optimum sits on an
// edge), fixes delta at (C - rho - rho_c)/2 per theta (optionally refined
// over (0, midpoint]), refines theta by golden section, and returns the
// minimizing bound.
BoundResult optimizeBound(const TrafficModel& through, const NetworkSpec& spec, Objective obj,
                          const BoundOptions& opts = {});

} // namespace snc

#endif // SNC_BOUNDS_HPP
