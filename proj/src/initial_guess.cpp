#include <mighty/initial_guess.hpp>

namespace mighty
{

HermiteSpline initial_guess(const Scenario &sc)
{
    const int M = sc.segments();
    if (M < 1)
        throw DomainError("initial_guess: scenario has no corridors");
    const double cruise = 0.5 * sc.limits.v_max;

    std::vector<KnotState> knots(M + 1);
    knots.front() = sc.start;
    knots.back() = sc.goal;
    for (int i = 1; i < M; ++i)
    {
        const Polytope overlap = intersect(sc.corridors[i - 1], sc.corridors[i]);
        const auto ball = chebyshev_center(overlap);
        if (!ball || !(ball->radius > 0.0))
            throw InfeasibleError("initial_guess: corridors " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " do not overlap");
        knots[i].p = analytic_center(overlap, ball->center);
    }
    for (int i = 1; i < M; ++i)
    {
        const Vec3 chord = knots[i + 1].p - knots[i - 1].p;
        const double len = chord.norm();
        knots[i].v = len > 0.0 ? Vec3(cruise / len * chord) : Vec3::Zero();
        knots[i].a.setZero();
    }
    std::vector<double> durations(M);
    for (int s = 0; s < M; ++s)
        durations[s] = std::max(kMinGuessDuration, (knots[s + 1].p - knots[s].p).norm() / cruise);
    return HermiteSpline(std::move(knots), std::move(durations));
}

HermiteSpline starting_spline(const Scenario &scenario)
{
    return scenario.initial_guess ? *scenario.initial_guess : initial_guess(scenario);
}

} // namespace mighty
