#pragma once

#include <mighty/scenario.hpp>
#include <mighty/transform.hpp>

#include <cstdint>

namespace mighty
{

// Synthetic scenes built from box corridors. All are deterministic in `seed`.

// L-shaped three-box corridor, v_max = 1 m/s.
Scenario make_corner_scenario();

// Zig-zag corridor through a synthetic forest, static-benchmark limits and weights.
Scenario make_forest_scenario(std::uint64_t seed = 7);

// 20 m straight scene with five trefoil obstacles (barrier radius 3 m, collision radius 0.1 m).
Scenario make_dynamic_scenario(std::uint64_t seed);

// Random polyline corridor with 3-6 legs for solver batteries.
Scenario make_random_scenario(std::uint64_t seed);

// Scenario plus an off-nominal decision vector at which every cost term is active.
struct AuditCase
{
    Scenario scenario;
    Eigen::VectorXd z;
    DerivativeScaling scaling = DerivativeScaling::scaled;
};
AuditCase make_audit_case(std::uint64_t seed, int segments, DerivativeScaling scaling);

} // namespace mighty
