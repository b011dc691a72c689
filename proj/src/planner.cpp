#include <mighty/planner.hpp>
#include <mighty/initial_guess.hpp>

#include <cmath>

namespace mighty
{

PlanResult plan(const Scenario &scenario, const ObjectiveOptions &options, const SolverConfig &config)
{
    const TrajectoryObjective objective(scenario, options);
    const Eigen::VectorXd z0 = objective.pack(starting_spline(scenario));
    const SmoothFunction f = [&objective](const Eigen::VectorXd &z, Eigen::VectorXd &g) { return objective(z, &g); };
    SolveResult solve = minimize(f, z0, config);
    HermiteSpline sp = objective.spline(solve.z);
    for (double T : sp.durations())
        if (!(T > 0.0))
            throw DomainError("plan: solver produced a nonpositive duration");
    return {sp, std::move(solve), objective.breakdown(objective.pack(sp))};
}

HermiteSpline dilate(const HermiteSpline &spline, double gamma)
{
    if (!(gamma > 0.0))
        throw DomainError("dilate: factor must be positive");
    auto knots = spline.knots();
    for (auto &k : knots)
    {
        k.v /= gamma;
        k.a /= gamma * gamma;
    }
    auto durations = spline.durations();
    for (auto &T : durations)
        T *= gamma;
    return HermiteSpline(std::move(knots), std::move(durations));
}

namespace
{

bool within_limits(const HermiteSpline &spline, const Scenario &scenario)
{
    const Metrics m = evaluate_metrics(spline, scenario);
    return m.rho_vel == 0.0 && m.rho_acc == 0.0 && m.rho_jerk == 0.0;
}

} // namespace

BaselineResult decoupled_baseline(const Scenario &scenario, const ObjectiveOptions &options, const SolverConfig &config)
{
    const TrajectoryObjective objective(scenario, options);
    const Eigen::VectorXd z0 = objective.pack(starting_spline(scenario));
    const int M = scenario.segments();
    const Eigen::Index spatial = 9 * (M - 1);

    BaselineResult out;
    Eigen::VectorXd z = z0;
    if (spatial > 0)
    {
        const Eigen::VectorXd sigma = z0.tail(M);
        const SmoothFunction f = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
            Eigen::VectorXd full(z0.size()), gfull(z0.size());
            full << x, sigma;
            const double value = objective(full, &gfull);
            g = gfull.head(spatial);
            return value;
        };
        out.solve = minimize(f, z0.head(spatial), config);
        z.head(spatial) = out.solve.z;
    }
    else
    {
        out.solve.z = z0;
        out.solve.cost_history.push_back(objective(z0, nullptr));
        out.solve.reason = Termination::gradient;
    }
    out.spatial = objective.spline(z);

    if (within_limits(out.spatial, scenario))
    {
        out.spline = out.spatial;
        return out;
    }
    double lo = 1.0, hi = 2.0;
    while (!within_limits(dilate(out.spatial, hi), scenario))
    {
        if (hi >= kMaxDilation)
            throw InfeasibleError("decoupled_baseline: no time scaling up to " + std::to_string(kMaxDilation) +
                                  " removes the limit violations");
        lo = hi;
        hi = std::min(2.0 * hi, kMaxDilation);
    }
    while (hi - lo > 1e-3)
    {
        const double mid = 0.5 * (lo + hi);
        (within_limits(dilate(out.spatial, mid), scenario) ? hi : lo) = mid;
    }
    out.gamma = hi;
    out.spline = dilate(out.spatial, hi);
    return out;
}

} // namespace mighty
