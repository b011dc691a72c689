#pragma once

#include <mighty/scenario.hpp>

#include <optional>
#include <vector>

namespace mighty
{

// Nearest-obstacle center distance over the sampled trajectory.
struct DistanceStats
{
    double min = 0.0;
    double p5 = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
};

struct Metrics
{
    double t_opt_ms = 0.0;     // filled in by the caller from the solve
    double t_trav = 0.0;       // [s]
    double l_path = 0.0;       // [m]
    double s_jerk = 0.0;       // integral of |j| dt
    double s_jerk_rms = 0.0;   // sqrt(1/T integral |j|^2 dt)
    double rho_vel = 0.0;      // [%] of samples over the limit
    double rho_acc = 0.0;
    double rho_jerk = 0.0;
    std::optional<DistanceStats> obstacle_distance;
};

inline constexpr double kMetricsStep = 1e-3;
inline constexpr double kViolationSlack = 1e-9;  // relative

// Uniform grid of ceil(T/dt) intervals over the whole trajectory. Violation
// fractions and obstacle distances use this grid; path length and jerk
// integrals use the same step within each segment.
std::vector<double> metric_sample_times(double total, double dt);

Metrics evaluate_metrics(const HermiteSpline &spline, const Scenario &scenario, double dt = kMetricsStep);

// Distance from x to the nearest obstacle center at time t (infinity with no obstacles).
double nearest_obstacle_distance(const Vec3 &x, double t, const std::vector<ObstacleTrack> &obstacles);

// Linear interpolation between order statistics; `sorted` must be ascending.
double percentile(const std::vector<double> &sorted, double q);

} // namespace mighty
