#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace mighty
{

using Vec3 = Eigen::Vector3d;

// Position, velocity and acceleration carried by a spline knot.
struct KnotState
{
    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Vec3 a = Vec3::Zero();

    bool allFinite() const { return p.allFinite() && v.allFinite() && a.allFinite(); }
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Invalid configuration value (quadrature resolution, solver options, ...).
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// No feasible point exists (empty corridor overlap, time-scaling cap exceeded).
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace mighty
