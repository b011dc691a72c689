#pragma once

#include <mighty/types.hpp>

namespace mighty
{

// Obstacle moving along a trefoil knot:
// k(t) = center + scale * (sin q + 2 sin 2q, cos q - 2 cos 2q, -sin 3q), q = omega t + phase.
struct ObstacleTrack
{
    Vec3 center = Vec3::Zero();
    double scale = 1.0;
    double omega = 0.0;
    double phase = 0.0;

    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
};

inline Vec3 trefoil_position(double t, const ObstacleTrack &params) { return params.position(t); }

} // namespace mighty
