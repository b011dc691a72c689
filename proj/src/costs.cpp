#include <mighty/costs.hpp>

#include <cmath>
#include <string>

namespace mighty
{

HingeValue smooth_hinge(double x, double mu)
{
    if (!(mu > 0.0))
        throw DomainError("smooth_hinge: width must be positive, got " + std::to_string(mu));
    if (x <= 0.0)
        return {0.0, 0.0};
    if (x <= mu)
        return {0.5 * x * x / mu, x / mu};
    return {x - 0.5 * mu, 1.0};
}

SampleJacobians &SampleJacobians::operator+=(const SampleJacobians &o)
{
    value += o.value;
    lx += o.lx;
    lv += o.lv;
    la += o.la;
    lj += o.lj;
    lt += o.lt;
    return *this;
}

SampleJacobians SampleJacobians::scaled(double w) const
{
    return {w * value, w * lx, w * lv, w * la, w * lj, w * lt};
}

SegmentCostResult &SegmentCostResult::operator+=(const SegmentCostResult &o)
{
    value += o.value;
    for (int k = 0; k < 6; ++k)
        g_c[k] += o.g_c[k];
    dT += o.dT;
    d_start += o.d_start;
    return *this;
}

SegmentCostResult SegmentCostResult::scaled(double w) const
{
    SegmentCostResult r = *this;
    r.value *= w;
    for (auto &g : r.g_c)
        g *= w;
    r.dT *= w;
    r.d_start *= w;
    return r;
}

const Eigen::Matrix3d &jerk_gram()
{
    static const Eigen::Matrix3d G = [] {
        Eigen::Matrix3d g;
        g << 1.0 / 5.0, 1.0 / 10.0, 1.0 / 30.0,
             1.0 / 10.0, 2.0 / 15.0, 1.0 / 10.0,
             1.0 / 30.0, 1.0 / 10.0, 1.0 / 5.0;
        return g;
    }();
    return G;
}

namespace
{

// Shared body of the exact and surrogate jerk costs: value = C sum_mn W_mn D_m.D_n.
SegmentCostResult jerk_quadratic(const BezierSegment &seg, const Eigen::Matrix3d &W)
{
    const auto &c = seg.c;
    const double T = seg.T;
    const double C = 3600.0 / std::pow(T, 5);

    std::array<Vec3, 3> delta;
    for (int m = 0; m < 3; ++m)
        delta[m] = c[m + 3] - 3.0 * c[m + 2] + 3.0 * c[m + 1] - c[m];

    std::array<Vec3, 3> wdelta;
    for (int m = 0; m < 3; ++m)
        wdelta[m] = W(m, 0) * delta[0] + W(m, 1) * delta[1] + W(m, 2) * delta[2];

    SegmentCostResult out;
    for (int m = 0; m < 3; ++m)
        out.value += delta[m].dot(wdelta[m]);
    out.value *= C;

    static constexpr double stencil[4] = {-1.0, 3.0, -3.0, 1.0};
    for (int m = 0; m < 3; ++m)
        for (int q = 0; q < 4; ++q)
            out.g_c[m + q] += 2.0 * C * stencil[q] * wdelta[m];

    out.dT = -5.0 / T * out.value;
    return out;
}

} // namespace

SegmentCostResult jerk_closed_form(const BezierSegment &seg) { return jerk_quadratic(seg, jerk_gram()); }

SegmentCostResult jerk_surrogate(const BezierSegment &seg, const std::array<double, 3> &w)
{
    for (double wm : w)
        if (!(wm > 0.0))
            throw DomainError("jerk_surrogate: weights must be positive");
    return jerk_quadratic(seg, Eigen::Vector3d(w[0], w[1], w[2]).asDiagonal().toDenseMatrix());
}

TimeCost time_cost(std::span<const double> durations)
{
    TimeCost tc;
    for (double T : durations)
        tc.value += T;
    tc.grad.assign(durations.size(), 1.0);
    return tc;
}

namespace
{

SampleJacobians norm_limit(const Vec3 &d, double limit, double mu, Vec3 SampleJacobians::*slot)
{
    SampleJacobians s;
    const auto h = smooth_hinge(d.squaredNorm() - limit * limit, mu);
    s.value = h.value;
    s.*slot = 2.0 * h.slope * d;
    return s;
}

} // namespace

LimitSampleTerms limit_sample_terms(const State &state, const Limits &limits, double mu)
{
    return {norm_limit(state.v, limits.v_max, mu, &SampleJacobians::lv),
            norm_limit(state.a, limits.a_max, mu, &SampleJacobians::la),
            norm_limit(state.j, limits.j_max, mu, &SampleJacobians::lj)};
}

SampleJacobians limit_sample_cost(const State &state, const Limits &limits, double mu)
{
    auto terms = limit_sample_terms(state, limits, mu);
    SampleJacobians s = terms.vel;
    s += terms.acc;
    s += terms.jerk;
    return s;
}

SampleJacobians sfc_sample_cost(const Vec3 &x, const Polytope &poly, double c_sfc, double mu)
{
    SampleJacobians s;
    for (const auto &h : poly.halfspaces)
    {
        const auto v = smooth_hinge(h.a.dot(x) - h.b + c_sfc, mu);
        s.value += v.value;
        s.lx += v.slope * h.a;
    }
    return s;
}

SampleJacobians dyn_obstacle_sample_cost(const Vec3 &x, double t, std::span<const ObstacleTrack> tracks, double c_dyn)
{
    if (!(c_dyn > 0.0))
        throw DomainError("dyn_obstacle_sample_cost: barrier radius must be positive");
    SampleJacobians s;
    const double c2 = c_dyn * c_dyn;
    for (const auto &track : tracks)
    {
        const Vec3 d = x - track.position(t);
        const double gap = c2 - d.squaredNorm();
        if (gap <= 0.0)
            continue;
        s.value += gap * gap * gap;
        const Vec3 gx = -6.0 * gap * gap * d;
        s.lx += gx;
        // d/dt through k(t): dl/dk = -dl/dx
        s.lt += -gx.dot(track.velocity(t));
    }
    return s;
}

} // namespace mighty
