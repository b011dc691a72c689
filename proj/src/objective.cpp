#include <mighty/objective.hpp>
#include <mighty/gradients.hpp>

#include <cmath>

namespace mighty
{

TrajectoryObjective::TrajectoryObjective(Scenario scenario, ObjectiveOptions options)
    : scenario_(std::move(scenario)), options_(options), table_(BasisTable::shared(scenario_.kappa))
{
    validate_scenario(scenario_);
}

HermiteSpline TrajectoryObjective::spline(const Eigen::VectorXd &z) const
{
    return unpack(z, scenario_.start, scenario_.goal, options_.scaling);
}

Eigen::VectorXd TrajectoryObjective::pack(const HermiteSpline &spline) const
{
    return mighty::pack(spline, options_.scaling);
}

CostBreakdown TrajectoryObjective::breakdown(const Eigen::VectorXd &z) const
{
    CostBreakdown b;
    evaluate(z, nullptr, &b);
    return b;
}

double TrajectoryObjective::evaluate(const Eigen::VectorXd &z, Eigen::VectorXd *grad, CostBreakdown *breakdown) const
{
    const DecisionLayout layout{scenario_.segments()};
    if (z.size() != layout.size())
        throw DomainError("objective: decision vector has length " + std::to_string(z.size()) + ", expected " +
                          std::to_string(layout.size()));
    for (int s = 0; s < layout.segments; ++s)
        if (!(std::abs(z[layout.sigma(s)]) <= kMaxLogDuration))
        {
            if (grad)
                grad->setZero(z.size());
            return kDivergedCost;
        }
    if (!z.allFinite())
        return std::numeric_limits<double>::quiet_NaN();

    const HermiteSpline sp = spline(z);
    if (!grad)
        return evaluate_spline(sp, nullptr, breakdown);
    RawGradient raw;
    const double f = evaluate_spline(sp, &raw, breakdown);
    *grad = pullback_gradient(raw, sp, options_.scaling);
    return f;
}

double TrajectoryObjective::evaluate_spline(const HermiteSpline &spline, RawGradient *raw, CostBreakdown *breakdown) const
{
    const int M = spline.segments();
    if (M != scenario_.segments())
        throw DomainError("objective: spline has " + std::to_string(M) + " segments, scenario has " +
                          std::to_string(scenario_.segments()));
    const Weights &w = scenario_.weights;
    const unsigned mask = options_.terms;
    const auto on = [mask](unsigned t) { return (mask & t) != 0; };

    const bool sfc = on(cost_term::sfc) && w.w_sfc != 0.0;
    const bool vel = on(cost_term::vel) && w.w_v != 0.0;
    const bool acc = on(cost_term::acc) && w.w_a != 0.0;
    const bool jrk = on(cost_term::jerk) && w.w_j != 0.0;
    const bool dyn = on(cost_term::dyn) && w.w_dyn != 0.0 && !scenario_.obstacles.empty();
    const bool sampled = sfc || vel || acc || jrk || dyn;

    if (raw)
        *raw = RawGradient::zeros(M);
    CostBreakdown local;
    std::vector<double> d_start(M, 0.0);

    double f = 0.0;
    if (on(cost_term::time))
    {
        const auto tc = time_cost(spline.durations());
        local.time = w.w_T * tc.value;
        if (raw)
            for (int s = 0; s < M; ++s)
                raw->T[s] += w.w_T * tc.grad[s];
    }

    double t_start = 0.0;
    for (int s = 0; s < M; ++s)
    {
        const BezierSegment seg = spline.segment(s);
        SegmentCostResult total;

        if (on(cost_term::smooth) && w.w_smooth != 0.0)
        {
            const auto r = options_.smoothness == SmoothnessForm::exact ? jerk_closed_form(seg)
                                                                        : jerk_surrogate(seg, options_.surrogate_weights);
            local.smooth += w.w_smooth * r.value;
            total += r.scaled(w.w_smooth);
        }

        if (sampled)
        {
            const Polytope &corridor = scenario_.corridors[s];
            const auto per_sample = [&](unsigned which) {
                return [&, which](const State &st, double t) {
                    SampleJacobians l;
                    if ((which & cost_term::sfc) && sfc)
                        l += sfc_sample_cost(st.x, corridor, w.c_sfc, w.mu).scaled(w.w_sfc);
                    if ((which & (cost_term::vel | cost_term::acc | cost_term::jerk)) && (vel || acc || jrk))
                    {
                        const auto lim = limit_sample_terms(st, scenario_.limits, w.mu);
                        if ((which & cost_term::vel) && vel)
                            l += lim.vel.scaled(w.w_v);
                        if ((which & cost_term::acc) && acc)
                            l += lim.acc.scaled(w.w_a);
                        if ((which & cost_term::jerk) && jrk)
                            l += lim.jerk.scaled(w.w_j);
                    }
                    if ((which & cost_term::dyn) && dyn)
                        l += dyn_obstacle_sample_cost(st.x, t, scenario_.obstacles, w.c_dyn).scaled(w.w_dyn);
                    return l;
                };
            };

            if (breakdown)
            {
                // one pass per term so each weighted value is reported separately
                const std::pair<unsigned, double CostBreakdown::*> parts[] = {
                    {cost_term::sfc, &CostBreakdown::sfc}, {cost_term::vel, &CostBreakdown::vel},
                    {cost_term::acc, &CostBreakdown::acc}, {cost_term::jerk, &CostBreakdown::jerk},
                    {cost_term::dyn, &CostBreakdown::dyn}};
                for (const auto &[bit, slot] : parts)
                {
                    const auto r = accumulate_sampled(seg, t_start, *table_, per_sample(bit));
                    local.*slot += r.value;
                    total += r;
                }
            }
            else
            {
                total += accumulate_sampled(seg, t_start, *table_, per_sample(cost_term::all));
            }
        }

        if (!breakdown)
            f += total.value;

        if (raw)
        {
            const auto &k0 = spline.knot(s);
            const auto &k1 = spline.knot(s + 1);
            const auto e = pullback_to_endpoints(total.g_c, seg.T);
            raw->p[s] += e.p0;
            raw->v[s] += e.v0;
            raw->a[s] += e.a0;
            raw->p[s + 1] += e.p1;
            raw->v[s + 1] += e.v1;
            raw->a[s + 1] += e.a1;
            raw->T[s] += segment_duration_gradient(total.dT, total.g_c, dc_dT(k0, k1, seg.T), 0.0);
            d_start[s] = total.d_start;
        }
        t_start += seg.T;
    }

    // t_s = sum_{r<s} T_r
    if (raw)
    {
        double suffix = 0.0;
        for (int r = M - 1; r >= 0; --r)
        {
            raw->T[r] += suffix;
            suffix += d_start[r];
        }
    }

    if (breakdown)
    {
        *breakdown = local;
        return local.total();
    }
    return f + local.time;
}

} // namespace mighty
