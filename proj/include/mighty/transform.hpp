#pragma once

#include <mighty/spline.hpp>

#include <Eigen/Core>

#include <span>
#include <vector>

namespace mighty
{

// Durations live in log space: T = exp(sigma).
double duration_forward(double sigma);
double duration_backward(double T);

// Tbar_0 = T_0, Tbar_M = T_{M-1}, interior Tbar_i = (T_{i-1} + T_i) / 2.
std::vector<double> averaged_local_time(std::span<const double> durations);

// Whether interior knot derivatives enter the decision vector scaled by the
// averaged local time (vhat = Tbar v, ahat = Tbar^2 a) or raw.
enum class DerivativeScaling
{
    scaled,
    unscaled
};

// Decision vector layout: [p_1 vhat_1 ahat_1 ... p_{M-1} vhat_{M-1} ahat_{M-1} sigma_0 ... sigma_{M-1}].
struct DecisionLayout
{
    int segments = 1;

    static DecisionLayout from_size(Eigen::Index n);

    int size() const { return 9 * (segments - 1) + segments; }
    // i in 1..M-1
    int p(int i) const { return 9 * (i - 1); }
    int v(int i) const { return 9 * (i - 1) + 3; }
    int a(int i) const { return 9 * (i - 1) + 6; }
    int sigma(int s) const { return 9 * (segments - 1) + s; }
};

struct ScalingContext
{
    std::vector<double> durations;
    std::vector<double> tbar;
};

ScalingContext scaling_context(std::span<const double> durations);

Eigen::VectorXd pack(const HermiteSpline &spline, DerivativeScaling scaling = DerivativeScaling::scaled);

HermiteSpline unpack(const Eigen::VectorXd &z, const KnotState &start, const KnotState &goal,
                     DerivativeScaling scaling = DerivativeScaling::scaled);

// Gradient of an objective with respect to the physical spline variables.
// Boundary knot entries are accepted and ignored (boundary states are fixed).
struct RawGradient
{
    std::vector<Vec3> p, v, a;  // per knot, M+1 entries
    std::vector<double> T;      // per segment, M entries

    static RawGradient zeros(int segments);
};

// Chain rule from physical variables to the decision vector, including the
// dependence of the unscaled derivatives on durations through Tbar and the
// exp-map factor on sigma.
Eigen::VectorXd pullback_gradient(const RawGradient &raw, const HermiteSpline &spline,
                                  DerivativeScaling scaling = DerivativeScaling::scaled);

} // namespace mighty
