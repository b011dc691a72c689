#include <mighty/spline.hpp>
#include <mighty/bernstein.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace mighty
{

BezierSegment hermite_to_bezier(const KnotState &start, const KnotState &end, double T)
{
    if (!(T > 0.0))
        throw DomainError("hermite_to_bezier: duration must be positive, got " + std::to_string(T));
    const double T2 = T * T;
    BezierSegment seg;
    seg.T = T;
    seg.c[0] = start.p;
    seg.c[1] = start.p + (T / 5.0) * start.v;
    seg.c[2] = start.p + (2.0 * T / 5.0) * start.v + (T2 / 20.0) * start.a;
    seg.c[3] = end.p - (2.0 * T / 5.0) * end.v + (T2 / 20.0) * end.a;
    seg.c[4] = end.p - (T / 5.0) * end.v;
    seg.c[5] = end.p;
    return seg;
}

std::vector<Vec3> bezier_derivative_cpoints(const BezierSegment &seg, int order)
{
    if (order < 1 || order > 3)
        throw DomainError("bezier_derivative_cpoints: order " + std::to_string(order) + " not in 1..3");
    std::vector<Vec3> d(seg.c.begin(), seg.c.end());
    for (int k = 0; k < order; ++k)
        for (std::size_t i = 0; i + 1 < d.size() - k; ++i)
            d[i] = d[i + 1] - d[i];
    d.resize(6 - order);
    static constexpr double factor[4] = {1.0, 5.0, 20.0, 60.0};
    const double scale = factor[order] / std::pow(seg.T, order);
    for (auto &p : d)
        p *= scale;
    return d;
}

State eval_segment(const BezierSegment &seg, double tau)
{
    const auto &c = seg.c;
    const double invT = 1.0 / seg.T;
    const auto b5 = bernstein<5>(tau);
    const auto b4 = bernstein<4>(tau);
    const auto b3 = bernstein<3>(tau);
    const auto b2 = bernstein<2>(tau);

    State s;
    // offsets from c0 keep constant curves exactly constant
    s.x = c[0];
    for (int i = 1; i < 6; ++i)
        s.x += b5[i] * (c[i] - c[0]);
    for (int i = 0; i < 5; ++i)
        s.v += b4[i] * (c[i + 1] - c[i]);
    for (int i = 0; i < 4; ++i)
        s.a += b3[i] * (c[i + 2] - 2.0 * c[i + 1] + c[i]);
    for (int i = 0; i < 3; ++i)
        s.j += b2[i] * (c[i + 3] - 3.0 * c[i + 2] + 3.0 * c[i + 1] - c[i]);
    s.v *= 5.0 * invT;
    s.a *= 20.0 * invT * invT;
    s.j *= 60.0 * invT * invT * invT;
    return s;
}

HermiteSpline::HermiteSpline(std::vector<KnotState> knots, std::vector<double> durations)
    : knots_(std::move(knots)), durations_(std::move(durations))
{
    if (durations_.empty())
        throw DomainError("HermiteSpline: at least one segment required");
    if (knots_.size() != durations_.size() + 1)
        throw DomainError("HermiteSpline: expected " + std::to_string(durations_.size() + 1) +
                          " knots, got " + std::to_string(knots_.size()));
    for (std::size_t s = 0; s < durations_.size(); ++s)
        if (!(durations_[s] > 0.0) || !std::isfinite(durations_[s]))
            throw DomainError("HermiteSpline: duration " + std::to_string(s) + " must be positive and finite");
    for (std::size_t i = 0; i < knots_.size(); ++i)
        if (!knots_[i].allFinite())
            throw DomainError("HermiteSpline: knot " + std::to_string(i) + " is not finite");
}

double HermiteSpline::total_duration() const
{
    double t = 0.0;
    for (double T : durations_)
        t += T;
    return t;
}

double HermiteSpline::start_time(int s) const
{
    double t = 0.0;
    for (int r = 0; r < s; ++r)
        t += durations_[r];
    return t;
}

BezierSegment HermiteSpline::segment(int s) const
{
    return hermite_to_bezier(knots_[s], knots_[s + 1], durations_[s]);
}

std::vector<BezierSegment> HermiteSpline::bezier() const
{
    std::vector<BezierSegment> out;
    out.reserve(durations_.size());
    for (int s = 0; s < segments(); ++s)
        out.push_back(segment(s));
    return out;
}

SegmentLocation locate(const HermiteSpline &spline, double t)
{
    const double total = spline.total_duration();
    const double slack = 1e-12 * std::max(1.0, total);
    if (!(t >= -slack && t <= total + slack))
        throw DomainError("locate: t = " + std::to_string(t) + " outside [0, " + std::to_string(total) + "]");
    const int M = spline.segments();
    double start = 0.0;
    for (int s = 0; s < M - 1; ++s)
    {
        const double end = start + spline.duration(s);
        if (t < end)
            return {s, std::max(0.0, (t - start) / spline.duration(s))};
        start = end;
    }
    const double tau = (t - start) / spline.duration(M - 1);
    return {M - 1, std::clamp(tau, 0.0, 1.0)};
}

State eval_state(const HermiteSpline &spline, double t)
{
    const auto loc = locate(spline, t);
    return eval_segment(spline.segment(loc.segment), loc.tau);
}

std::vector<KnotMismatch> continuity_report(std::span<const BezierSegment> segments)
{
    std::vector<KnotMismatch> report;
    for (std::size_t s = 1; s < segments.size(); ++s)
    {
        const State left = eval_segment(segments[s - 1], 1.0);
        const State right = eval_segment(segments[s], 0.0);
        report.push_back({static_cast<int>(s),
                          (left.x - right.x).cwiseAbs().maxCoeff(),
                          (left.v - right.v).cwiseAbs().maxCoeff(),
                          (left.a - right.a).cwiseAbs().maxCoeff()});
    }
    return report;
}

std::vector<KnotMismatch> continuity_report(const HermiteSpline &spline)
{
    const auto segs = spline.bezier();
    return continuity_report(std::span<const BezierSegment>(segs));
}

} // namespace mighty
