#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mighty::cli
{

namespace
{

const char *scaling_name(DerivativeScaling s)
{
    return s == DerivativeScaling::scaled ? "scaled" : "unscaled";
}

// Shortest round-trip decimal, identical to the JSON rendering.
std::string num(double x)
{
    if (!std::isfinite(x))
        return "";
    return nlohmann::json(x).dump();
}

nlohmann::json optional_number(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

RunReport solve_report(const Scenario &scenario, DerivativeScaling scaling, const SolverConfig &config)
{
    ObjectiveOptions options;
    options.scaling = scaling;
    const PlanResult result = plan(scenario, options, config);
    RunReport r;
    r.scenario = scenario.name;
    r.seed = scenario.seed;
    r.v_max = scenario.limits.v_max;
    r.scaling = scaling;
    r.iterations = result.solve.iterations;
    r.evaluations = result.solve.evaluations;
    r.termination = result.solve.reason;
    r.initial_cost = result.solve.cost_history.front();
    r.final_cost = result.solve.final_cost();
    r.metrics = evaluate_metrics(result.spline, scenario);
    r.metrics.t_opt_ms = result.solve.wall_ms;
    r.breakdown = result.breakdown;
    r.trajectory = result.spline;
    r.wall_ms = result.solve.wall_ms;
    return r;
}

nlohmann::json report_to_json(const RunReport &r)
{
    using nlohmann::json;
    const Metrics &m = r.metrics;
    json distance = nullptr;
    if (m.obstacle_distance)
        distance = {{"min", m.obstacle_distance->min},
                    {"p5", m.obstacle_distance->p5},
                    {"p50", m.obstacle_distance->p50},
                    {"p95", m.obstacle_distance->p95}};
    const CostBreakdown &b = r.breakdown;
    return {
        {"scenario", r.scenario},
        {"seed", r.seed},
        {"v_max", r.v_max},
        {"scaling", scaling_name(r.scaling)},
        {"solve",
         {{"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"termination", to_string(r.termination)},
          {"initial_cost", r.initial_cost},
          {"final_cost", r.final_cost}}},
        {"metrics",
         {{"t_trav", m.t_trav},
          {"l_path", m.l_path},
          {"s_jerk", m.s_jerk},
          {"s_jerk_rms", m.s_jerk_rms},
          {"rho_vel", m.rho_vel},
          {"rho_acc", m.rho_acc},
          {"rho_jerk", m.rho_jerk},
          {"obstacle_distance", distance}}},
        {"breakdown",
         {{"time", b.time},
          {"smooth", b.smooth},
          {"sfc", b.sfc},
          {"vel", b.vel},
          {"acc", b.acc},
          {"jerk", b.jerk},
          {"dyn", b.dyn},
          {"total", optional_number(b.total())}}},
        {"trajectory", spline_to_json(r.trajectory)},
        {"timing", {{"t_opt_ms", r.wall_ms}}},
    };
}

const std::vector<std::string> &report_csv_columns()
{
    static const std::vector<std::string> columns = {
        "scenario",   "seed",       "v_max",     "scaling",    "termination", "iterations", "evaluations",
        "final_cost", "t_trav",     "l_path",    "s_jerk",     "s_jerk_rms",  "rho_vel",    "rho_acc",
        "rho_jerk",   "dist_min",   "dist_p5",   "dist_p50",   "dist_p95",    "cost_time",  "cost_smooth",
        "cost_sfc",   "cost_vel",   "cost_acc",  "cost_jerk",  "cost_dyn",    "t_opt_ms"};
    return columns;
}

std::string report_csv_row(const RunReport &r)
{
    const Metrics &m = r.metrics;
    const CostBreakdown &b = r.breakdown;
    const double nan = std::nan("");
    const DistanceStats d = m.obstacle_distance.value_or(DistanceStats{nan, nan, nan, nan});
    const std::vector<std::string> fields = {
        r.scenario, std::to_string(r.seed), num(r.v_max), scaling_name(r.scaling), to_string(r.termination),
        std::to_string(r.iterations), std::to_string(r.evaluations), num(r.final_cost), num(m.t_trav),
        num(m.l_path), num(m.s_jerk), num(m.s_jerk_rms), num(m.rho_vel), num(m.rho_acc), num(m.rho_jerk),
        num(d.min), num(d.p5), num(d.p50), num(d.p95), num(b.time), num(b.smooth), num(b.sfc), num(b.vel),
        num(b.acc), num(b.jerk), num(b.dyn), num(r.wall_ms)};
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i)
        line += (i ? "," : "") + fields[i];
    return line + "\n";
}

const std::vector<std::string> &export_csv_columns()
{
    static const std::vector<std::string> columns = {"t",  "x",  "y",  "z",  "vx", "vy",    "vz",
                                                     "ax", "ay", "az", "jx", "jy", "jz", "speed",
                                                     "nearest_obstacle"};
    return columns;
}

std::string export_csv(const HermiteSpline &spline, const Scenario &scenario, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw UsageError("--dt must be a positive number");
    const double total = spline.total_duration();
    const long rows = static_cast<long>(std::floor(total / dt)) + 1;
    std::ostringstream os;
    const auto &columns = export_csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << "\n";
    for (long k = 0; k < rows; ++k)
    {
        const double t = std::min(static_cast<double>(k) * dt, total);
        const State s = eval_state(spline, t);
        os << num(t);
        for (const Vec3 *v : {&s.x, &s.v, &s.a, &s.j})
            for (int i = 0; i < 3; ++i)
                os << "," << num((*v)[i]);
        os << "," << num(s.v.norm()) << "," << num(nearest_obstacle_distance(s.x, t, scenario.obstacles)) << "\n";
    }
    return os.str();
}

Scenario load_for_cli(const std::filesystem::path &path)
{
    if (!std::filesystem::exists(path))
        throw UsageError("scenario file not found: " + path.string());
    Scenario sc = load_scenario(path);
    if (const char *env = std::getenv("MIGHTY_SEED"); env && *env)
    {
        char *end = nullptr;
        errno = 0;
        const unsigned long long seed = std::strtoull(env, &end, 10);
        if (*end != '\0' || errno != 0 || env[0] == '-')
            throw UsageError(std::string("MIGHTY_SEED is not a nonnegative integer: ") + env);
        sc.seed = seed;
    }
    return sc;
}

void write_atomically(const std::filesystem::path &path, const std::string &content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw UsageError("cannot write " + tmp.string());
        os << content;
        if (!os.flush())
            throw UsageError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp);
        throw UsageError("cannot write " + path.string() + ": " + ec.message());
    }
}

std::string coordinate_name(int segments, int index)
{
    const DecisionLayout layout{segments};
    if (index >= layout.sigma(0))
        return "sigma[" + std::to_string(index - layout.sigma(0)) + "]";
    static const char *groups[] = {"p", "v", "a"};
    static const char *axes[] = {"x", "y", "z"};
    const int knot = index / 9 + 1;
    const int within = index % 9;
    return std::string(groups[within / 3]) + "[" + std::to_string(knot) + "]." + axes[within % 3];
}

} // namespace mighty::cli
