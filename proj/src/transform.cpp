#include <mighty/transform.hpp>

#include <cmath>
#include <string>

namespace mighty
{

double duration_forward(double sigma) { return std::exp(sigma); }

double duration_backward(double T)
{
    if (!(T > 0.0))
        throw DomainError("duration_backward: duration must be positive, got " + std::to_string(T));
    return std::log(T);
}

std::vector<double> averaged_local_time(std::span<const double> durations)
{
    const std::size_t M = durations.size();
    if (M == 0)
        throw DomainError("averaged_local_time: no durations");
    for (double T : durations)
        if (!(T > 0.0))
            throw DomainError("averaged_local_time: nonpositive duration " + std::to_string(T));
    std::vector<double> tbar(M + 1);
    tbar[0] = durations[0];
    for (std::size_t i = 1; i < M; ++i)
        tbar[i] = 0.5 * (durations[i - 1] + durations[i]);
    tbar[M] = durations[M - 1];
    return tbar;
}

DecisionLayout DecisionLayout::from_size(Eigen::Index n)
{
    if (n < 1 || (n + 9) % 10 != 0)
        throw DomainError("decision vector length " + std::to_string(n) + " is not 10M - 9");
    return DecisionLayout{static_cast<int>((n + 9) / 10)};
}

ScalingContext scaling_context(std::span<const double> durations)
{
    return {std::vector<double>(durations.begin(), durations.end()), averaged_local_time(durations)};
}

Eigen::VectorXd pack(const HermiteSpline &spline, DerivativeScaling scaling)
{
    const int M = spline.segments();
    const DecisionLayout layout{M};
    const auto tbar = averaged_local_time(spline.durations());
    Eigen::VectorXd z(layout.size());
    for (int i = 1; i < M; ++i)
    {
        const auto &k = spline.knot(i);
        const double sv = scaling == DerivativeScaling::scaled ? tbar[i] : 1.0;
        z.segment<3>(layout.p(i)) = k.p;
        z.segment<3>(layout.v(i)) = sv * k.v;
        z.segment<3>(layout.a(i)) = sv * sv * k.a;
    }
    for (int s = 0; s < M; ++s)
        z[layout.sigma(s)] = duration_backward(spline.duration(s));
    return z;
}

HermiteSpline unpack(const Eigen::VectorXd &z, const KnotState &start, const KnotState &goal,
                     DerivativeScaling scaling)
{
    const auto layout = DecisionLayout::from_size(z.size());
    const int M = layout.segments;
    std::vector<double> T(M);
    for (int s = 0; s < M; ++s)
        T[s] = duration_forward(z[layout.sigma(s)]);
    const auto tbar = averaged_local_time(T);

    std::vector<KnotState> knots(M + 1);
    knots.front() = start;
    knots.back() = goal;
    for (int i = 1; i < M; ++i)
    {
        const double sv = scaling == DerivativeScaling::scaled ? 1.0 / tbar[i] : 1.0;
        knots[i].p = z.segment<3>(layout.p(i));
        knots[i].v = sv * z.segment<3>(layout.v(i));
        knots[i].a = sv * sv * z.segment<3>(layout.a(i));
    }
    return HermiteSpline(std::move(knots), std::move(T));
}

RawGradient RawGradient::zeros(int segments)
{
    RawGradient g;
    g.p.assign(segments + 1, Vec3::Zero());
    g.v.assign(segments + 1, Vec3::Zero());
    g.a.assign(segments + 1, Vec3::Zero());
    g.T.assign(segments, 0.0);
    return g;
}

Eigen::VectorXd pullback_gradient(const RawGradient &raw, const HermiteSpline &spline, DerivativeScaling scaling)
{
    const int M = spline.segments();
    const DecisionLayout layout{M};
    const auto tbar = averaged_local_time(spline.durations());
    std::vector<double> gT = raw.T;

    Eigen::VectorXd g(layout.size());
    for (int i = 1; i < M; ++i)
    {
        g.segment<3>(layout.p(i)) = raw.p[i];
        if (scaling == DerivativeScaling::unscaled)
        {
            g.segment<3>(layout.v(i)) = raw.v[i];
            g.segment<3>(layout.a(i)) = raw.a[i];
            continue;
        }
        const double inv = 1.0 / tbar[i];
        g.segment<3>(layout.v(i)) = inv * raw.v[i];
        g.segment<3>(layout.a(i)) = inv * inv * raw.a[i];

        // v = vhat / Tbar, a = ahat / Tbar^2, dTbar_i/dT_{i-1} = dTbar_i/dT_i = 1/2
        const auto &k = spline.knot(i);
        const double gTbar = -inv * raw.v[i].dot(k.v) - 2.0 * inv * raw.a[i].dot(k.a);
        gT[i - 1] += 0.5 * gTbar;
        gT[i] += 0.5 * gTbar;
    }
    for (int s = 0; s < M; ++s)
        g[layout.sigma(s)] = spline.duration(s) * gT[s];
    return g;
}

} // namespace mighty
