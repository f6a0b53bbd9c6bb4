// curve.cpp - Exact min-plus algebra over piecewise-linear curves.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/curve.hpp"

#include <algorithm>
#include <cmath>

namespace snc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A convex fragment of a convolution result: an anchor point followed by
// finite segments in ascending slope order and an optional terminal ray.
// The fragment is +inf outside its domain.
struct Piece {
    struct Seg {
        double slope;
        double len;
    };
    double x0 = 0.0;
    double v0 = 0.0;
    std::vector<Seg> segs;
    bool hasRay = false;
    double raySlope = 0.0;

    double endX() const {
        double x = x0;
        for (const Seg& s : segs) x += s.len;
        return x;
    }
    bool contains(double x, double tol) const {
        if (x < x0 - tol) return false;
        return hasRay || x <= endX() + tol;
    }
    double evalAt(double x) const {
        double v = v0;
        double pos = x0;
        for (const Seg& s : segs) {
            double take = std::min(x - pos, s.len);
            if (take <= 0.0) return v;
            v += s.slope * take;
            pos += take;
        }
        if (x > pos && hasRay) v += raySlope * (x - pos);
        return v;
    }
};

// Splits a curve into elementary pieces: one per finite segment, plus a ray
// for a finite terminal slope or a single anchor point for an infinite one.
std::vector<Piece> elementaryPieces(const Curve& c) {
    std::vector<Piece> out;
    const auto& pts = c.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Piece p;
        p.x0 = pts[i].t;
        p.v0 = pts[i].value;
        double len = pts[i + 1].t - pts[i].t;
        p.segs.push_back({(pts[i + 1].value - pts[i].value) / len, len});
        out.push_back(std::move(p));
    }
    Piece tail;
    tail.x0 = pts.back().t;
    tail.v0 = pts.back().value;
    if (!c.hasInfiniteTail()) {
        tail.hasRay = true;
        tail.raySlope = c.terminalSlope();
    }
    out.push_back(std::move(tail));
    return out;
}

// Convolution of two elementary pieces: translate to the summed anchor and
// traverse the combined slopes in ascending order; an infinite ray absorbs
// every steeper part.
Piece convolvePieces(const Piece& a, const Piece& b) {
    struct Item {
        double slope;
        double len; // kInf marks a ray
    };
    std::vector<Item> items;
    for (const auto& s : a.segs) items.push_back({s.slope, s.len});
    for (const auto& s : b.segs) items.push_back({s.slope, s.len});
    if (a.hasRay) items.push_back({a.raySlope, kInf});
    if (b.hasRay) items.push_back({b.raySlope, kInf});
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& x, const Item& y) { return x.slope < y.slope; });

    Piece r;
    r.x0 = a.x0 + b.x0;
    r.v0 = a.v0 + b.v0;
    for (const Item& it : items) {
        if (it.len == kInf) {
            r.hasRay = true;
            r.raySlope = it.slope;
            break;
        }
        r.segs.push_back({it.slope, it.len});
    }
    return r;
}

void addCandidate(std::vector<double>& xs, double x) {
    if (std::isfinite(x) && x >= 0.0) xs.push_back(x);
}

// Crossing abscissa of two affine parts, if it lies inside both domains.
void addCrossings(std::vector<double>& xs, double m1, double c1, double lo1, double hi1,
                  double m2, double c2, double lo2, double hi2) {
    if (m1 == m2) return;
    double x = (c2 - c1) / (m1 - m2);
    double lo = std::max(lo1, lo2);
    double hi = std::min(hi1, hi2);
    if (x >= lo && x <= hi) addCandidate(xs, x);
}

// Enumerates the affine parts of a piece as (slope, intercept, lo, hi).
template <typename Fn>
void forEachLine(const Piece& p, Fn&& fn) {
    double x = p.x0;
    double v = p.v0;
    for (const auto& s : p.segs) {
        fn(s.slope, v - s.slope * x, x, x + s.len);
        v += s.slope * s.len;
        x += s.len;
    }
    if (p.hasRay) fn(p.raySlope, v - p.raySlope * x, x, kInf);
}

Curve lowerEnvelope(const std::vector<Piece>& pieces) {
    std::vector<double> xs;
    for (const Piece& p : pieces) {
        addCandidate(xs, p.x0);
        double x = p.x0;
        for (const auto& s : p.segs) {
            x += s.len;
            addCandidate(xs, x);
        }
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            forEachLine(pieces[i], [&](double m1, double c1, double lo1, double hi1) {
                forEachLine(pieces[j], [&](double m2, double c2, double lo2, double hi2) {
                    addCrossings(xs, m1, c1, lo1, hi1, m2, c2, lo2, hi2);
                });
            });
        }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> uniq;
    for (double x : xs) {
        if (uniq.empty() || x - uniq.back() > 1e-9 * (1.0 + std::abs(x))) uniq.push_back(x);
    }

    std::vector<Breakpoint> bps;
    for (double x : uniq) {
        double tol = 1e-9 * (1.0 + std::abs(x));
        double best = kInf;
        for (const Piece& p : pieces) {
            if (p.contains(x, tol)) best = std::min(best, p.evalAt(x));
        }
        if (best < kInf) bps.push_back({x, best});
    }

    double last = uniq.back();
    double probe = last + std::max(1.0, std::abs(last));
    double bestVal = kInf;
    double bestSlope = kInf;
    for (const Piece& p : pieces) {
        if (!p.hasRay) continue;
        double v = p.evalAt(probe);
        if (v < bestVal - 1e-9 * (1.0 + std::abs(v))) {
            bestVal = v;
            bestSlope = p.raySlope;
        } else if (v <= bestVal + 1e-9 * (1.0 + std::abs(v))) {
            bestSlope = std::min(bestSlope, p.raySlope);
        }
    }
    double terminal = (bestVal == kInf) ? Curve::kInfiniteSlope : bestSlope;
    return Curve(std::move(bps), terminal).normalized();
}

// Smallest s >= 0 with c(s) >= y, or +inf when y exceeds sup c.
double lowerInverse(const Curve& c, double y) {
    const auto& pts = c.breakpoints();
    if (y <= pts.front().value) return 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].value >= y) {
            double slope = (pts[i].value - pts[i - 1].value) / (pts[i].t - pts[i - 1].t);
            return pts[i - 1].t + (y - pts[i - 1].value) / slope;
        }
    }
    if (c.hasInfiniteTail()) return pts.back().t;
    if (c.terminalSlope() <= 0.0) return kInf;
    return pts.back().t + (y - pts.back().value) / c.terminalSlope();
}

} // namespace

Curve::Curve(std::vector<Breakpoint> points, double terminalSlope)
    : points_(std::move(points)), terminalSlope_(terminalSlope) {
    if (points_.empty()) throw std::invalid_argument("curve needs at least one breakpoint");
    if (points_.front().t != 0.0)
        throw std::invalid_argument("first breakpoint must be at t = 0");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i].t <= points_[i - 1].t)
            throw std::invalid_argument("breakpoint times must be strictly increasing");
        if (points_[i].value < points_[i - 1].value)
            throw std::invalid_argument("curve must be non-decreasing");
    }
    if (std::isnan(terminalSlope_) || terminalSlope_ < 0.0)
        throw std::invalid_argument("terminal slope must be >= 0");
}

double Curve::eval(double t) const {
    if (t < 0.0) throw std::invalid_argument("curve evaluated at negative time");
    if (t >= points_.back().t) {
        if (t == points_.back().t) return points_.back().value;
        if (hasInfiniteTail()) return kInf;
        return points_.back().value + terminalSlope_ * (t - points_.back().t);
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double x, const Breakpoint& b) { return x < b.t; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    double w = (t - lo.t) / (hi.t - lo.t);
    return lo.value + w * (hi.value - lo.value);
}

double Curve::maxSlope() const {
    double m = hasInfiniteTail() ? 0.0 : terminalSlope_;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        m = std::max(m, (points_[i].value - points_[i - 1].value) / (points_[i].t - points_[i - 1].t));
    }
    return m;
}

Curve Curve::plusRate(double rate) const {
    std::vector<Breakpoint> pts = points_;
    for (auto& p : pts) p.value += rate * p.t;
    double term = hasInfiniteTail() ? kInfiniteSlope : terminalSlope_ + rate;
    if (!hasInfiniteTail() && term < 0.0)
        throw std::invalid_argument("rate shift makes terminal slope negative");
    return Curve(std::move(pts), term);
}

Curve Curve::plusConstant(double c) const {
    std::vector<Breakpoint> pts = points_;
    for (auto& p : pts) p.value += c;
    return Curve(std::move(pts), terminalSlope_);
}

Curve Curve::normalized() const {
    std::vector<Breakpoint> pts;
    pts.push_back(points_.front());
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
        const Breakpoint& a = pts.back();
        const Breakpoint& b = points_[i];
        const Breakpoint& c = points_[i + 1];
        double lerp = a.value + (c.value - a.value) * (b.t - a.t) / (c.t - a.t);
        if (std::abs(b.value - lerp) > 1e-9 * (1.0 + std::abs(b.value))) pts.push_back(b);
    }
    if (points_.size() > 1) {
        const Breakpoint& last = points_.back();
        const Breakpoint& prev = pts.back();
        double inSlope = (last.value - prev.value) / (last.t - prev.t);
        bool collinearWithTail = !hasInfiniteTail() &&
            std::abs(inSlope - terminalSlope_) <= 1e-9 * (1.0 + std::abs(terminalSlope_));
        if (!collinearWithTail) pts.push_back(last);
    }
    return Curve(std::move(pts), terminalSlope_);
}

Curve convolve(const Curve& f, const Curve& g) {
    std::vector<Piece> fp = elementaryPieces(f);
    std::vector<Piece> gp = elementaryPieces(g);
    std::vector<Piece> all;
    all.reserve(fp.size() * gp.size());
    for (const Piece& a : fp) {
        for (const Piece& b : gp) all.push_back(convolvePieces(a, b));
    }
    return lowerEnvelope(all);
}

double deconvolveAt(const Curve& f, const Curve& g, double delta, double horizon) {
    if (delta < 0.0) throw std::invalid_argument("deconvolution lag must be >= 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    if (f.hasInfiniteTail())
        throw std::invalid_argument("deconvolution of an infinite-tail curve is undefined");

    double cap = horizon;
    if (g.hasInfiniteTail()) cap = std::min(cap, g.lastBreakTime());
    if (!std::isfinite(cap) && f.terminalSlope() > g.terminalSlope()) {
        throw DivergenceError("deconvolution diverges: arrival rate exceeds service rate");
    }

    std::vector<double> us{0.0};
    for (const auto& b : g.breakpoints()) us.push_back(b.t);
    for (const auto& b : f.breakpoints()) us.push_back(std::max(0.0, b.t - delta));
    if (std::isfinite(cap)) us.push_back(cap);

    double best = -kInf;
    for (double u : us) {
        if (u > cap) continue;
        double gv = g.eval(u);
        if (gv == kInf) continue;
        best = std::max(best, f.eval(delta + u) - gv);
    }
    return best;
}

double horizontalDeviation(const Curve& f, const Curve& g, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (f.hasInfiniteTail() || g.hasInfiniteTail())
        throw std::invalid_argument("horizontal deviation needs finite-tail curves");
    if (f.terminalSlope() > g.terminalSlope())
        throw DivergenceError("horizontal deviation diverges: arrival rate exceeds service rate");
    if (g.terminalSlope() == 0.0) {
        double supF = f.breakpoints().back().value; // f flat too by the slope check
        double supG = g.breakpoints().back().value;
        if (f.terminalSlope() == 0.0 && supF + sigma > supG)
            throw DivergenceError("horizontal deviation diverges: bounded service below demand");
    }

    std::vector<double> ts{0.0};
    for (const auto& b : f.breakpoints()) ts.push_back(b.t);
    for (const auto& b : g.breakpoints()) {
        double t = lowerInverse(f, b.value - sigma);
        if (std::isfinite(t)) ts.push_back(t);
    }
    double tail = 0.0;
    for (double t : ts) tail = std::max(tail, t);
    ts.push_back(tail + 1.0);

    double d = 0.0;
    for (double t : ts) {
        double s = lowerInverse(g, f.eval(t) + sigma);
        if (!std::isfinite(s))
            throw DivergenceError("horizontal deviation diverges: bounded service below demand");
        d = std::max(d, s - t);
    }
    return std::max(0.0, d);
}

bool approxEqual(const Curve& a, const Curve& b, double relTol, double absTol) {
    if (a.hasInfiniteTail() != b.hasInfiniteTail()) return false;
    if (!a.hasInfiniteTail()) {
        double st = std::max(std::abs(a.terminalSlope()), std::abs(b.terminalSlope()));
        if (std::abs(a.terminalSlope() - b.terminalSlope()) > absTol + relTol * st) return false;
    }
    std::vector<double> ts;
    for (const auto& p : a.breakpoints()) ts.push_back(p.t);
    for (const auto& p : b.breakpoints()) ts.push_back(p.t);
    double last = *std::max_element(ts.begin(), ts.end());
    ts.push_back(last + 1.0);
    ts.push_back(2.0 * last + 2.0);
    for (double t : ts) {
        double va = a.eval(t);
        double vb = b.eval(t);
        if (va == kInf && vb == kInf) continue;
        if (std::abs(va - vb) > absTol + relTol * std::max(std::abs(va), std::abs(vb)))
            return false;
    }
    return true;
}

} // namespace snc
