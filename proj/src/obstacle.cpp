#include <mighty/obstacle.hpp>

#include <cmath>

namespace mighty
{

Vec3 ObstacleTrack::position(double t) const
{
    const double q = omega * t + phase;
    return center + scale * Vec3(std::sin(q) + 2.0 * std::sin(2.0 * q),
                                 std::cos(q) - 2.0 * std::cos(2.0 * q),
                                 -std::sin(3.0 * q));
}

Vec3 ObstacleTrack::velocity(double t) const
{
    const double q = omega * t + phase;
    return scale * omega * Vec3(std::cos(q) + 4.0 * std::cos(2.0 * q),
                                -std::sin(q) + 4.0 * std::sin(2.0 * q),
                                -3.0 * std::cos(3.0 * q));
}

} // namespace mighty
