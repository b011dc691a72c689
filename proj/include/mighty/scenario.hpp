#pragma once

#include <mighty/costs.hpp>
#include <mighty/spline.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mighty
{

inline constexpr int kScenarioVersion = 1;

// Load/validation failure; the message starts with the offending field path.
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(const std::string &field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(field)
    {
    }
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

struct Scenario
{
    std::string name;
    KnotState start;
    KnotState goal;
    std::vector<Polytope> corridors;  // one per segment
    Limits limits;
    Weights weights;
    std::vector<ObstacleTrack> obstacles;
    double collision_radius = 0.1;
    int kappa = 16;
    std::uint64_t seed = 0;
    std::optional<HermiteSpline> initial_guess;

    int segments() const { return static_cast<int>(corridors.size()); }
};

// Throws ScenarioError naming the first invalid field.
void validate_scenario(const Scenario &scenario);

Scenario scenario_from_json(const nlohmann::json &doc);
nlohmann::json scenario_to_json(const Scenario &scenario);

Scenario load_scenario(const std::filesystem::path &path);
void save_scenario(const Scenario &scenario, const std::filesystem::path &path);

nlohmann::json spline_to_json(const HermiteSpline &spline);
HermiteSpline spline_from_json(const nlohmann::json &doc, const std::string &field = "trajectory");

} // namespace mighty
