#pragma once

#include <mighty/spline.hpp>

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

namespace mighty
{

// Gradient of a segment cost w.r.t. its Hermite endpoint states and duration.
struct EndpointGradient
{
    Vec3 p0 = Vec3::Zero(), v0 = Vec3::Zero(), a0 = Vec3::Zero();
    Vec3 p1 = Vec3::Zero(), v1 = Vec3::Zero(), a1 = Vec3::Zero();
    double T = 0.0;
};

// C(T)^T g_c for the Hermite-to-Bezier map (spatial part; T is left at 0).
EndpointGradient pullback_to_endpoints(const std::array<Vec3, 6> &g_c, double T);

// Derivative of the six control points w.r.t. the segment duration.
std::array<Vec3, 6> dc_dT(const KnotState &start, const KnotState &end, double T);

// Total duration derivative: explicit + g_c . dc/dT + state-scaling part.
double segment_duration_gradient(double explicit_part, const std::array<Vec3, 6> &g_c,
                                 const std::array<Vec3, 6> &dcdT, double dT_states);

// Objective with optional gradient output.
using Objective = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd *)>;

struct AuditReport
{
    double max_rel_error = 0.0;
    int worst_coordinate = -1;
    std::vector<double> rel_error;     // per coordinate (NaN where skipped)
    std::vector<int> skipped;          // coordinates with a non-finite probe
    Eigen::VectorXd analytic;
    Eigen::VectorXd numeric;
};

// Central differences per coordinate; relative error |num - ana| / max(1, |ana|).
AuditReport fd_audit(const Objective &objective, const Eigen::VectorXd &z, double h);

} // namespace mighty
