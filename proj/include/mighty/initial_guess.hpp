#pragma once

#include <mighty/scenario.hpp>

namespace mighty
{

// Interior knots at the analytic centers of consecutive corridor overlaps,
// interior velocities along the neighbouring chord at v_max/2, zero interior
// accelerations, durations chord / (v_max/2) floored at kMinGuessDuration.
// Throws InfeasibleError when an overlap is empty.
HermiteSpline initial_guess(const Scenario &scenario);

// The scenario's stored guess if present, otherwise initial_guess().
HermiteSpline starting_spline(const Scenario &scenario);

inline constexpr double kMinGuessDuration = 0.1;

} // namespace mighty
