#pragma once

#include <mighty/lbfgs.hpp>
#include <mighty/metrics.hpp>
#include <mighty/objective.hpp>

namespace mighty
{

struct PlanResult
{
    HermiteSpline spline;
    SolveResult solve;
    CostBreakdown breakdown;
};

// Joint spatial-temporal solve from the scenario's starting spline.
PlanResult plan(const Scenario &scenario, const ObjectiveOptions &options = {}, const SolverConfig &config = {});

// Uniform time dilation by gamma: durations * gamma, v / gamma, a / gamma^2.
HermiteSpline dilate(const HermiteSpline &spline, double gamma);

struct BaselineResult
{
    HermiteSpline spline;
    HermiteSpline spatial;  // stage-1 result before time scaling
    double gamma = 1.0;
    SolveResult solve;
};

inline constexpr double kMaxDilation = 100.0;

// Decoupled comparator: optimize knots with durations frozen at the initial
// guess, then stretch time by the smallest gamma >= 1 (bisection to 1e-3)
// that removes every sampled velocity/acceleration/jerk violation.
BaselineResult decoupled_baseline(const Scenario &scenario, const ObjectiveOptions &options = {},
                                  const SolverConfig &config = {});

} // namespace mighty
