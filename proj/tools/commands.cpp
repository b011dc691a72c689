#include "cli.hpp"

#include <mighty/gradients.hpp>
#include <mighty/initial_guess.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace mighty::cli
{

namespace
{

const std::map<std::string, DerivativeScaling> kScalings = {{"scaled", DerivativeScaling::scaled},
                                                            {"unscaled", DerivativeScaling::unscaled}};

struct Common
{
    std::string scaling = "scaled";
    int max_iterations = SolverConfig{}.max_iterations;

    SolverConfig config() const
    {
        SolverConfig cfg;
        cfg.max_iterations = max_iterations;
        cfg.validate();
        return cfg;
    }
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--scaling", c.scaling, "Derivative variables: scaled or unscaled")
        ->check(CLI::IsMember({"scaled", "unscaled"}))
        ->capture_default_str();
    cmd->add_option("--max-iter", c.max_iterations, "Solver iteration cap")->capture_default_str();
}

void emit(const std::string &content, const std::string &path, std::ostream &out)
{
    if (path.empty() || path == "-")
        out << content;
    else
        write_atomically(path, content);
}

std::string csv_document(const std::vector<RunReport> &reports)
{
    std::string doc;
    const auto &columns = report_csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i)
        doc += (i ? "," : "") + columns[i];
    doc += "\n";
    for (const auto &r : reports)
        doc += report_csv_row(r);
    return doc;
}

std::string fixed(double x, int digits)
{
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

// ---- run ----

struct RunArgs
{
    std::string scenario, out, format = "json";
    Common common;
};

int cmd_run(const RunArgs &a, std::ostream &out)
{
    const Scenario sc = load_for_cli(a.scenario);
    const RunReport r = solve_report(sc, kScalings.at(a.common.scaling), a.common.config());
    emit(a.format == "csv" ? csv_document({r}) : report_to_json(r).dump(2) + "\n", a.out, out);
    return kExitOk;
}

// ---- gradcheck ----

struct GradcheckArgs
{
    std::string scenario, scaling = "both";
    double step = 1e-6;
    int corrupt = -1;
    bool solved = false;
};

int cmd_gradcheck(const GradcheckArgs &a, std::ostream &out, std::ostream &err)
{
    if (!(a.step > 0.0) || !std::isfinite(a.step))
        throw UsageError("--step must be a positive number");
    if (a.step > kCoarseStep)
        err << "warning: --step " << a.step
            << " is coarse; central-difference truncation error grows as h^2 and can exceed the "
            << kGradcheckThreshold << " threshold on a correct gradient (use 1e-6)\n";
    else if (a.step < 1e-9)
        err << "warning: --step " << a.step << " is tiny; round-off in the difference quotient dominates\n";

    const Scenario sc = load_for_cli(a.scenario);
    std::vector<DerivativeScaling> scalings;
    if (a.scaling == "both")
        scalings = {DerivativeScaling::scaled, DerivativeScaling::unscaled};
    else
        scalings = {kScalings.at(a.scaling)};

    const int dim = DecisionLayout{sc.segments()}.size();
    if (a.corrupt >= dim)
        throw UsageError("--corrupt-gradient index " + std::to_string(a.corrupt) + " is outside the " +
                         std::to_string(dim) + "-dimensional decision vector");

    const std::vector<std::pair<std::string, unsigned>> terms = {
        {"time", cost_term::time}, {"smooth", cost_term::smooth}, {"sfc", cost_term::sfc},
        {"vel", cost_term::vel},   {"acc", cost_term::acc},       {"jerk", cost_term::jerk},
        {"dyn", cost_term::dyn},   {"total", cost_term::all}};

    double worst = 0.0;
    std::string worst_label;
    out << std::left << std::setw(10) << "scaling" << std::setw(8) << "term" << std::setw(14) << "max_rel_err"
        << std::setw(12) << "worst" << "skipped\n";
    for (const DerivativeScaling scaling : scalings)
    {
        const char *sname = scaling == DerivativeScaling::scaled ? "scaled" : "unscaled";
        ObjectiveOptions base;
        base.scaling = scaling;
        HermiteSpline point = starting_spline(sc);
        if (a.solved)
            point = plan(sc, base).spline;
        for (const auto &[name, mask] : terms)
        {
            ObjectiveOptions opt = base;
            opt.terms = mask;
            const TrajectoryObjective objective(sc, opt);
            const Eigen::VectorXd z = objective.pack(point);
            const Objective f = [&](const Eigen::VectorXd &x, Eigen::VectorXd *g) {
                const double v = objective(x, g);
                if (g && a.corrupt >= 0)
                    (*g)[a.corrupt] += 0.5 * std::max(1.0, std::abs((*g)[a.corrupt]));
                return v;
            };
            const AuditReport rep = fd_audit(f, z, a.step);
            const std::string where =
                rep.worst_coordinate >= 0 ? coordinate_name(sc.segments(), rep.worst_coordinate) : "-";
            out << std::setw(10) << sname << std::setw(8) << name << std::setw(14) << fixed(rep.max_rel_error, 4)
                << std::setw(12) << where << rep.skipped.size() << "\n";
            if (rep.max_rel_error > worst)
            {
                worst = rep.max_rel_error;
                worst_label = std::string(sname) + " " + name + " at " + where + " (index " +
                              std::to_string(rep.worst_coordinate) + ")";
            }
        }
    }
    if (worst > kGradcheckThreshold)
    {
        err << "gradcheck FAILED: max relative error " << worst << " > " << kGradcheckThreshold << " in "
            << worst_label << "\n";
        return kExitCheckFailed;
    }
    out << "gradcheck passed: max relative error " << worst << " <= " << kGradcheckThreshold << "\n";
    return kExitOk;
}

// ---- sweep ----

struct SweepArgs
{
    std::string scenario, out;
    std::vector<std::string> vmax;
    int jobs = 1;
    Common common;
};

std::vector<double> parse_vmax(const std::vector<std::string> &items, std::ostream &err)
{
    std::vector<double> values;
    for (const auto &item : items)
    {
        if (item.empty())
            continue;
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used != item.size() || !(v > 0.0) || !std::isfinite(v))
            throw UsageError("--vmax entries must be positive numbers, got '" + item + "'");
        if (std::find(values.begin(), values.end(), v) != values.end())
        {
            err << "warning: duplicate --vmax entry " << item << " ignored\n";
            continue;
        }
        values.push_back(v);
    }
    if (values.empty())
        throw UsageError("--vmax needs at least one speed limit");
    return values;
}

int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err)
{
    const std::vector<double> speeds = parse_vmax(a.vmax, err);
    if (a.jobs < 1)
        throw UsageError("--jobs must be at least 1");
    const Scenario base = load_for_cli(a.scenario);
    const SolverConfig cfg = a.common.config();
    const DerivativeScaling scaling = kScalings.at(a.common.scaling);
    if (!a.out.empty())
        std::filesystem::create_directories(a.out);

    std::vector<std::optional<RunReport>> reports(speeds.size());
    std::vector<std::string> errors(speeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < speeds.size(); i = next++)
        {
            try
            {
                Scenario sc = base;
                sc.limits.v_max = speeds[i];
                validate_scenario(sc);
                reports[i] = solve_report(sc, scaling, cfg);
                if (!a.out.empty())
                {
                    const std::string file = sc.name + "-vmax-" + nlohmann::json(speeds[i]).dump() + ".json";
                    write_atomically(std::filesystem::path(a.out) / file, report_to_json(*reports[i]).dump(2) + "\n");
                }
            }
            catch (const std::exception &e)
            {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(a.jobs, static_cast<int>(speeds.size()));
    for (int k = 1; k < n; ++k)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();

    std::vector<RunReport> done;
    bool failed = false;
    out << std::left << std::setw(8) << "v_max" << std::setw(12) << "t_trav" << std::setw(12) << "iterations"
        << "termination\n";
    for (std::size_t i = 0; i < speeds.size(); ++i)
    {
        if (!reports[i])
        {
            failed = true;
            err << "error: v_max " << speeds[i] << ": " << errors[i] << "\n";
            continue;
        }
        done.push_back(*reports[i]);
        out << std::setw(8) << speeds[i] << std::setw(12) << fixed(reports[i]->metrics.t_trav, 6) << std::setw(12)
            << reports[i]->iterations << to_string(reports[i]->termination) << "\n";
    }
    std::vector<RunReport> by_speed = done;
    std::sort(by_speed.begin(), by_speed.end(), [](const auto &x, const auto &y) { return x.v_max < y.v_max; });
    bool monotone = true;
    for (std::size_t i = 1; i < by_speed.size(); ++i)
        monotone = monotone && by_speed[i].metrics.t_trav <= by_speed[i - 1].metrics.t_trav;
    out << "travel time non-increasing in v_max: " << (monotone ? "yes" : "no") << "\n";
    if (!a.out.empty())
        write_atomically(std::filesystem::path(a.out) / "sweep.csv", csv_document(done));
    return failed ? kExitCheckFailed : kExitOk;
}

// ---- ablation ----

struct AblationArgs
{
    std::vector<std::string> scenarios;
    std::string out;
    int max_iterations = SolverConfig{}.max_iterations;
};

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_ablation(const AblationArgs &a, std::ostream &out)
{
    SolverConfig cfg;
    cfg.max_iterations = a.max_iterations;
    cfg.validate();
    std::vector<Scenario> scenarios;
    for (const auto &path : a.scenarios)
        scenarios.push_back(load_for_cli(path));

    nlohmann::json runs = nlohmann::json::array(), timing = nlohmann::json::array();
    std::vector<double> it_scaled, it_unscaled;
    double max_gap = 0.0;
    out << std::left << std::setw(16) << "scenario" << std::setw(12) << "it_scaled" << std::setw(12) << "it_unscaled"
        << std::setw(14) << "cost_scaled" << std::setw(14) << "cost_unscaled" << "gap\n";
    for (const Scenario &sc : scenarios)
    {
        const RunReport s = solve_report(sc, DerivativeScaling::scaled, cfg);
        const RunReport u = solve_report(sc, DerivativeScaling::unscaled, cfg);
        const double gap = std::abs(s.final_cost - u.final_cost) / std::min(s.final_cost, u.final_cost);
        max_gap = std::max(max_gap, gap);
        it_scaled.push_back(s.iterations);
        it_unscaled.push_back(u.iterations);
        auto summary = [](const RunReport &r) {
            return nlohmann::json{{"iterations", r.iterations},
                                  {"evaluations", r.evaluations},
                                  {"termination", to_string(r.termination)},
                                  {"final_cost", r.final_cost},
                                  {"t_trav", r.metrics.t_trav}};
        };
        runs.push_back({{"scenario", sc.name}, {"seed", sc.seed}, {"scaled", summary(s)},
                        {"unscaled", summary(u)}, {"relative_cost_gap", gap}});
        timing.push_back({{"scenario", sc.name}, {"scaled_ms", s.wall_ms}, {"unscaled_ms", u.wall_ms}});
        out << std::setw(16) << sc.name << std::setw(12) << s.iterations << std::setw(12) << u.iterations
            << std::setw(14) << fixed(s.final_cost, 8) << std::setw(14) << fixed(u.final_cost, 8) << fixed(gap, 3)
            << "\n";
    }
    const double ms = median(it_scaled), mu = median(it_unscaled);
    out << "median iterations: scaled " << ms << ", unscaled " << mu << "; max relative cost gap " << fixed(max_gap, 3)
        << "\n";
    if (!a.out.empty())
    {
        const nlohmann::json doc = {
            {"runs", runs},
            {"summary",
             {{"median_iterations_scaled", ms}, {"median_iterations_unscaled", mu}, {"max_relative_cost_gap", max_gap}}},
            {"timing", timing}};
        write_atomically(a.out, doc.dump(2) + "\n");
    }
    return kExitOk;
}

// ---- export ----

struct ExportArgs
{
    std::string scenario, solution, out;
    double dt = 0.01;
    Common common;
};

HermiteSpline load_solution(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open solution file: " + path);
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw UsageError("solution file is not valid JSON: " + std::string(e.what()));
    }
    if (doc.is_object() && doc.contains("trajectory"))
        return spline_from_json(doc["trajectory"], "trajectory");
    return spline_from_json(doc, "$");
}

int cmd_export(const ExportArgs &a, std::ostream &out)
{
    const Scenario sc = load_for_cli(a.scenario);
    HermiteSpline spline;
    if (a.solution.empty())
    {
        ObjectiveOptions opt;
        opt.scaling = kScalings.at(a.common.scaling);
        spline = plan(sc, opt, a.common.config()).spline;
    }
    else
    {
        spline = load_solution(a.solution);
    }
    const KnotState &first = spline.knots().front(), &last = spline.knots().back();
    if ((first.p - sc.start.p).norm() > 1e-9 || (last.p - sc.goal.p).norm() > 1e-9)
        throw UsageError("solution endpoints do not match the scenario boundary");
    emit(export_csv(spline, sc, a.dt), a.out, out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Quintic Hermite spline trajectory optimizer", "mighty"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run_cmd = app.add_subcommand("run", "Solve a scenario and write a report");
    run_cmd->add_option("scenario", run_args.scenario, "Scenario JSON file")->required();
    run_cmd->add_option("--out", run_args.out, "Report path (stdout if omitted)");
    run_cmd->add_option("--format", run_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    add_common(run_cmd, run_args.common);

    GradcheckArgs gc;
    auto *gc_cmd = app.add_subcommand("gradcheck", "Compare analytic gradients with central differences");
    gc_cmd->add_option("scenario", gc.scenario, "Scenario JSON file")->required();
    gc_cmd->add_option("--step", gc.step, "Finite-difference step h")->capture_default_str();
    gc_cmd->add_option("--scaling", gc.scaling, "scaled, unscaled or both")
        ->check(CLI::IsMember({"scaled", "unscaled", "both"}))
        ->capture_default_str();
    gc_cmd->add_flag("--solved", gc.solved, "Audit at the optimized trajectory instead of the starting guess");
    gc_cmd->add_option("--corrupt-gradient", gc.corrupt,
                       "Debug: perturb this gradient coordinate to exercise the failure path");

    SweepArgs sw;
    auto *sw_cmd = app.add_subcommand("sweep", "Solve once per speed limit");
    sw_cmd->add_option("scenario", sw.scenario, "Scenario JSON file")->required();
    sw_cmd->add_option("--vmax", sw.vmax, "Comma-separated speed limits [m/s]")->required()->delimiter(',');
    sw_cmd->add_option("--jobs", sw.jobs, "Concurrent solves")->capture_default_str();
    sw_cmd->add_option("--out", sw.out, "Directory for per-speed reports and sweep.csv");
    add_common(sw_cmd, sw.common);

    AblationArgs ab;
    auto *ab_cmd = app.add_subcommand("ablation", "Compare scaled and unscaled derivative variables");
    ab_cmd->add_option("scenarios", ab.scenarios, "Scenario JSON files")->required();
    ab_cmd->add_option("--out", ab.out, "Paired report path");
    ab_cmd->add_option("--max-iter", ab.max_iterations, "Solver iteration cap")->capture_default_str();

    ExportArgs ex;
    auto *ex_cmd = app.add_subcommand("export", "Write uniformly sampled trajectory data as CSV");
    ex_cmd->add_option("scenario", ex.scenario, "Scenario JSON file")->required();
    ex_cmd->add_option("--solution", ex.solution, "Run report or trajectory JSON (solves if omitted)");
    ex_cmd->add_option("--dt", ex.dt, "Sampling step [s]")->capture_default_str();
    ex_cmd->add_option("--out", ex.out, "CSV path (stdout if omitted)");
    add_common(ex_cmd, ex.common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (run_cmd->parsed())
            return cmd_run(run_args, out);
        if (gc_cmd->parsed())
            return cmd_gradcheck(gc, out, err);
        if (sw_cmd->parsed())
            return cmd_sweep(sw, out, err);
        if (ab_cmd->parsed())
            return cmd_ablation(ab, out);
        if (ex_cmd->parsed())
            return cmd_export(ex, out);
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const ScenarioError &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const ConfigError &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

} // namespace mighty::cli
