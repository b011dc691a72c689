#include <mighty/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mighty
{

std::vector<double> metric_sample_times(double total, double dt)
{
    if (!(dt > 0.0))
        throw DomainError("metrics: sampling step must be positive");
    const auto n = std::max<long>(1, static_cast<long>(std::ceil(total / dt - 1e-9)));
    std::vector<double> t(n + 1);
    for (long k = 0; k <= n; ++k)
        t[k] = total * static_cast<double>(k) / static_cast<double>(n);
    return t;
}

double nearest_obstacle_distance(const Vec3 &x, double t, const std::vector<ObstacleTrack> &obstacles)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &o : obstacles)
        best = std::min(best, (x - o.position(t)).norm());
    return best;
}

double percentile(const std::vector<double> &sorted, double q)
{
    if (sorted.empty())
        throw DomainError("percentile of an empty sample");
    const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(sorted.size() - 1, lo + 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Metrics evaluate_metrics(const HermiteSpline &spline, const Scenario &scenario, double dt)
{
    Metrics m;
    m.t_trav = spline.total_duration();
    const auto &lim = scenario.limits;
    const double vmax = lim.v_max * (1.0 + kViolationSlack);
    const double amax = lim.a_max * (1.0 + kViolationSlack);
    const double jmax = lim.j_max * (1.0 + kViolationSlack);

    // violation fractions and obstacle distances on the uniform global grid
    const auto times = metric_sample_times(m.t_trav, dt);
    long over_v = 0, over_a = 0, over_j = 0;
    std::vector<double> nearest;
    for (double t : times)
    {
        const State st = eval_state(spline, t);
        over_v += st.v.norm() > vmax;
        over_a += st.a.norm() > amax;
        over_j += st.j.norm() > jmax;
        if (!scenario.obstacles.empty())
            nearest.push_back(nearest_obstacle_distance(st.x, t, scenario.obstacles));
    }
    const double n = static_cast<double>(times.size());
    m.rho_vel = 100.0 * static_cast<double>(over_v) / n;
    m.rho_acc = 100.0 * static_cast<double>(over_a) / n;
    m.rho_jerk = 100.0 * static_cast<double>(over_j) / n;

    // integrals per segment so the jerk jumps at knots fall on grid points
    double int_j = 0.0, int_j2 = 0.0;
    for (int s = 0; s < spline.segments(); ++s)
    {
        const BezierSegment &seg = spline.segment(s);
        const auto steps = std::max<long>(1, static_cast<long>(std::ceil(seg.T / dt - 1e-9)));
        const double h = seg.T / static_cast<double>(steps);
        State prev = eval_segment(seg, 0.0);
        double prev_jn = prev.j.norm();
        for (long k = 1; k <= steps; ++k)
        {
            const State st = eval_segment(seg, static_cast<double>(k) / static_cast<double>(steps));
            const double jn = st.j.norm();
            m.l_path += (st.x - prev.x).norm();
            int_j += 0.5 * h * (prev_jn + jn);
            int_j2 += 0.5 * h * (prev_jn * prev_jn + jn * jn);
            prev = st;
            prev_jn = jn;
        }
    }
    m.s_jerk = int_j;
    m.s_jerk_rms = std::sqrt(int_j2 / m.t_trav);
    if (!nearest.empty())
    {
        std::sort(nearest.begin(), nearest.end());
        m.obstacle_distance = DistanceStats{nearest.front(), percentile(nearest, 5.0), percentile(nearest, 50.0),
                                            percentile(nearest, 95.0)};
    }
    return m;
}

} // namespace mighty
