#include <mighty/gradients.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace mighty
{

EndpointGradient pullback_to_endpoints(const std::array<Vec3, 6> &g, double T)
{
    if (!(T > 0.0))
        throw DomainError("pullback_to_endpoints: duration must be positive");
    const double T2 = T * T;
    EndpointGradient e;
    e.p0 = g[0] + g[1] + g[2];
    e.v0 = (T / 5.0) * g[1] + (2.0 * T / 5.0) * g[2];
    e.a0 = (T2 / 20.0) * g[2];
    e.p1 = g[3] + g[4] + g[5];
    e.v1 = -(2.0 * T / 5.0) * g[3] - (T / 5.0) * g[4];
    e.a1 = (T2 / 20.0) * g[3];
    return e;
}

std::array<Vec3, 6> dc_dT(const KnotState &start, const KnotState &end, double T)
{
    if (!(T > 0.0))
        throw DomainError("dc_dT: duration must be positive");
    return {Vec3::Zero(),
            start.v / 5.0,
            2.0 * start.v / 5.0 + (T / 10.0) * start.a,
            -2.0 * end.v / 5.0 + (T / 10.0) * end.a,
            -end.v / 5.0,
            Vec3::Zero()};
}

double segment_duration_gradient(double explicit_part, const std::array<Vec3, 6> &g_c,
                                 const std::array<Vec3, 6> &dcdT, double dT_states)
{
    double coeff = 0.0;
    for (int k = 0; k < 6; ++k)
        coeff += g_c[k].dot(dcdT[k]);
    return explicit_part + coeff + dT_states;
}

AuditReport fd_audit(const Objective &objective, const Eigen::VectorXd &z, double h)
{
    if (!(h > 0.0))
        throw DomainError("fd_audit: step must be positive");
    const Eigen::Index n = z.size();
    AuditReport report;
    report.analytic.resize(n);
    report.numeric.resize(n);
    report.rel_error.assign(n, std::numeric_limits<double>::quiet_NaN());
    objective(z, &report.analytic);

    Eigen::VectorXd probe = z;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        probe[i] = z[i] + h;
        const double fp = objective(probe, nullptr);
        probe[i] = z[i] - h;
        const double fm = objective(probe, nullptr);
        probe[i] = z[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
        {
            report.numeric[i] = std::numeric_limits<double>::quiet_NaN();
            report.skipped.push_back(static_cast<int>(i));
            continue;
        }
        report.numeric[i] = (fp - fm) / (2.0 * h);
        const double ana = report.analytic[i];
        const double err = std::abs(report.numeric[i] - ana) / std::max(1.0, std::abs(ana));
        report.rel_error[i] = err;
        if (!(err <= report.max_rel_error))
        {
            report.max_rel_error = err;
            report.worst_coordinate = static_cast<int>(i);
        }
    }
    return report;
}

} // namespace mighty
