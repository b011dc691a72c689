#pragma once

#include <mighty/bernstein.hpp>
#include <mighty/geometry.hpp>
#include <mighty/obstacle.hpp>
#include <mighty/spline.hpp>

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace mighty
{

struct Limits
{
    double v_max = 4.0;
    double a_max = 10.0;
    double j_max = 30.0;
};

struct Weights
{
    double w_T = 5e2;
    double w_smooth = 1e-1;
    double w_sfc = 1e3;
    double w_v = 1e3;
    double w_a = 1e3;
    double w_j = 1e3;
    double w_dyn = 1e1;
    double mu = 1e-2;     // hinge smoothing width
    double c_sfc = 0.2;   // corridor margin [m]
    double c_dyn = 3.0;   // obstacle barrier radius [m]
};

struct HingeValue
{
    double value = 0.0;
    double slope = 0.0;
};

// One-sided Huber blend: 0 for x <= 0, x^2/(2 mu) on (0, mu], x - mu/2 beyond.
HingeValue smooth_hinge(double x, double mu);

// Partials of a per-sample cost. lt is the explicit dependence on global time
// (nonzero only for time-varying integrands such as moving obstacles).
struct SampleJacobians
{
    double value = 0.0;
    Vec3 lx = Vec3::Zero();
    Vec3 lv = Vec3::Zero();
    Vec3 la = Vec3::Zero();
    Vec3 lj = Vec3::Zero();
    double lt = 0.0;

    SampleJacobians &operator+=(const SampleJacobians &o);
    SampleJacobians scaled(double w) const;
};

// Per-segment cost with its gradient w.r.t. the control points (curve held
// fixed) and w.r.t. the segment duration (control points held fixed). d_start
// is the derivative w.r.t. the segment's global start time.
struct SegmentCostResult
{
    double value = 0.0;
    std::array<Vec3, 6> g_c{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
    double dT = 0.0;
    double d_start = 0.0;

    SegmentCostResult &operator+=(const SegmentCostResult &o);
    SegmentCostResult scaled(double w) const;
};

// Gram matrix of the quadratic Bernstein basis on [0,1].
const Eigen::Matrix3d &jerk_gram();

// Integrated squared jerk 3600 T^-5 Delta^T (G x I3) Delta over one segment.
SegmentCostResult jerk_closed_form(const BezierSegment &seg);

// Diagonal surrogate 3600 T^-5 sum_m w_m |Delta_m|^2.
SegmentCostResult jerk_surrogate(const BezierSegment &seg, const std::array<double, 3> &w);

inline std::array<double, 3> default_surrogate_weights() { return {1.0 / 5.0, 2.0 / 15.0, 1.0 / 5.0}; }

struct TimeCost
{
    double value = 0.0;
    std::vector<double> grad;
};

TimeCost time_cost(std::span<const double> durations);

// Velocity, acceleration and jerk norm limits through the smooth hinge
// (unweighted sum of the three terms).
SampleJacobians limit_sample_cost(const State &state, const Limits &limits, double mu);

struct LimitSampleTerms
{
    SampleJacobians vel, acc, jerk;
};
LimitSampleTerms limit_sample_terms(const State &state, const Limits &limits, double mu);

SampleJacobians sfc_sample_cost(const Vec3 &x, const Polytope &poly, double c_sfc, double mu);

// sum over tracks of (c_dyn^2 - |x - k(t)|^2)_+^3
SampleJacobians dyn_obstacle_sample_cost(const Vec3 &x, double t, std::span<const ObstacleTrack> tracks, double c_dyn);

// Trapezoidal quadrature of a per-sample integrand over one segment:
// value = T sum_j w_j l(state(tau_j), t_start + tau_j T).
// g_c and dT exclude the control-point dependence on T (added by the caller
// through dc_dT).
template <class Evaluator>
SegmentCostResult accumulate_sampled(const BezierSegment &seg, double t_start, const BasisTable &table,
                                     Evaluator &&ell)
{
    const auto &c = seg.c;
    const double T = seg.T;
    const double invT = 1.0 / T;
    const double f1 = 5.0 * invT;
    const double f2 = 20.0 * invT * invT;
    const double f3 = 60.0 * invT * invT * invT;

    Vec3 d1[5], d2[4], d3[3];
    for (int i = 0; i < 5; ++i)
        d1[i] = c[i + 1] - c[i];
    for (int i = 0; i < 4; ++i)
        d2[i] = d1[i + 1] - d1[i];
    for (int i = 0; i < 3; ++i)
        d3[i] = d2[i + 1] - d2[i];

    SegmentCostResult out;
    for (int j = 0; j < table.size(); ++j)
    {
        const auto &b5 = table.b5(j);
        const auto &b4 = table.b4(j);
        const auto &b3 = table.b3(j);
        const auto &b2 = table.b2(j);
        const double tau = table.tau(j);

        State st;
        for (int i = 0; i < 6; ++i)
            st.x += b5[i] * c[i];
        for (int i = 0; i < 5; ++i)
            st.v += b4[i] * d1[i];
        for (int i = 0; i < 4; ++i)
            st.a += b3[i] * d2[i];
        for (int i = 0; i < 3; ++i)
            st.j += b2[i] * d3[i];
        st.v *= f1;
        st.a *= f2;
        st.j *= f3;

        const SampleJacobians l = ell(st, t_start + tau * T);
        const double w = table.weight(j) * T;
        out.value += w * l.value;

        auto at = [](const auto &b, int k) { return (k >= 0 && k < static_cast<int>(b.size())) ? b[k] : 0.0; };
        for (int k = 0; k < 6; ++k)
        {
            const double cv = f1 * (at(b4, k - 1) - at(b4, k));
            const double ca = f2 * (at(b3, k - 2) - 2.0 * at(b3, k - 1) + at(b3, k));
            const double cj = f3 * (at(b2, k - 3) - 3.0 * at(b2, k - 2) + 3.0 * at(b2, k - 1) - at(b2, k));
            out.g_c[k] += w * (b5[k] * l.lx + cv * l.lv + ca * l.la + cj * l.lj);
        }

        // dt = T dtau; v ~ 1/T, a ~ 1/T^2, j ~ 1/T^3 at fixed control points; sample time t_start + tau T
        out.dT += table.weight(j) * l.value +
                  w * invT * (-l.lv.dot(st.v) - 2.0 * l.la.dot(st.a) - 3.0 * l.lj.dot(st.j)) +
                  w * tau * l.lt;
        out.d_start += w * l.lt;
    }
    return out;
}

} // namespace mighty
