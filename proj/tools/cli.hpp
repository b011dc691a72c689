#pragma once

#include <mighty/planner.hpp>

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mighty::cli
{

// Exit-code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr double kGradcheckThreshold = 1e-4;
inline constexpr double kCoarseStep = 1e-4;

// Bad flags, unreadable files, invalid environment overrides.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// One solved scenario: solver summary, metrics and weighted cost terms.
struct RunReport
{
    std::string scenario;
    std::uint64_t seed = 0;
    double v_max = 0.0;
    DerivativeScaling scaling = DerivativeScaling::scaled;
    int iterations = 0;
    int evaluations = 0;
    Termination termination = Termination::max_iterations;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    Metrics metrics;
    CostBreakdown breakdown;
    HermiteSpline trajectory;
    double wall_ms = 0.0;
};

RunReport solve_report(const Scenario &scenario, DerivativeScaling scaling, const SolverConfig &config);

// Wall time lives only under "timing" so reports compare exactly otherwise.
nlohmann::json report_to_json(const RunReport &report);

const std::vector<std::string> &report_csv_columns();
std::string report_csv_row(const RunReport &report);

const std::vector<std::string> &export_csv_columns();
// floor(T / dt) + 1 uniform samples starting at t = 0.
std::string export_csv(const HermiteSpline &spline, const Scenario &scenario, double dt);

// Loads a scenario and applies the MIGHTY_SEED override.
Scenario load_for_cli(const std::filesystem::path &path);

// Writes via a sibling temporary file and rename.
void write_atomically(const std::filesystem::path &path, const std::string &content);

std::string coordinate_name(int segments, int index);

// Entry point; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mighty::cli
