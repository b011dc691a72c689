#include <mighty/scenario.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace mighty
{

using nlohmann::json;

namespace
{

const json &member(const json &obj, const std::string &key, const std::string &path)
{
    if (!obj.is_object())
        throw ScenarioError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ScenarioError(path + "." + key, "missing field");
    return *it;
}

double number(const json &j, const std::string &path)
{
    if (!j.is_number())
        throw ScenarioError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ScenarioError(path, "must be finite");
    return v;
}

double number(const json &obj, const std::string &key, const std::string &path)
{
    return number(member(obj, key, path), path + "." + key);
}

double number_or(const json &obj, const std::string &key, const std::string &path, double fallback)
{
    return obj.contains(key) ? number(obj, key, path) : fallback;
}

Vec3 vec3(const json &j, const std::string &path)
{
    if (!j.is_array() || j.size() != 3)
        throw ScenarioError(path, "expected an array of 3 numbers");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
}

json vec3_json(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

KnotState knot(const json &j, const std::string &path)
{
    KnotState k;
    k.p = vec3(member(j, "p", path), path + ".p");
    k.v = j.contains("v") ? vec3(j["v"], path + ".v") : Vec3::Zero();
    k.a = j.contains("a") ? vec3(j["a"], path + ".a") : Vec3::Zero();
    return k;
}

json knot_json(const KnotState &k) { return {{"p", vec3_json(k.p)}, {"v", vec3_json(k.v)}, {"a", vec3_json(k.a)}}; }

Polytope polytope(const json &j, const std::string &path)
{
    if (!j.is_array() || j.empty())
        throw ScenarioError(path, "expected a nonempty array of halfspaces");
    Polytope p;
    for (std::size_t h = 0; h < j.size(); ++h)
    {
        const std::string hp = path + "[" + std::to_string(h) + "]";
        Halfspace hs{vec3(member(j[h], "a", hp), hp + ".a"), number(j[h], "b", hp)};
        if (!(hs.a.norm() > 0.0))
            throw ScenarioError(hp + ".a", "normal must be nonzero");
        p.halfspaces.push_back(hs);
    }
    return p;
}

void require(bool ok, const std::string &field, const std::string &what)
{
    if (!ok)
        throw ScenarioError(field, what);
}

} // namespace

json spline_to_json(const HermiteSpline &spline)
{
    json knots = json::array();
    for (const auto &k : spline.knots())
        knots.push_back(knot_json(k));
    return {{"knots", knots}, {"durations", spline.durations()}};
}

HermiteSpline spline_from_json(const json &doc, const std::string &field)
{
    const json &knots = member(doc, "knots", field);
    const json &durations = member(doc, "durations", field);
    if (!knots.is_array())
        throw ScenarioError(field + ".knots", "expected an array");
    if (!durations.is_array() || durations.empty())
        throw ScenarioError(field + ".durations", "expected a nonempty array");
    std::vector<double> T;
    for (std::size_t s = 0; s < durations.size(); ++s)
    {
        const std::string p = field + ".durations[" + std::to_string(s) + "]";
        T.push_back(number(durations[s], p));
        require(T.back() > 0.0, p, "duration must be positive");
    }
    require(knots.size() == T.size() + 1, field + ".knots",
            "expected " + std::to_string(T.size() + 1) + " knots for " + std::to_string(T.size()) + " durations");
    std::vector<KnotState> ks;
    for (std::size_t i = 0; i < knots.size(); ++i)
        ks.push_back(knot(knots[i], field + ".knots[" + std::to_string(i) + "]"));
    return HermiteSpline(std::move(ks), std::move(T));
}

void validate_scenario(const Scenario &sc)
{
    require(sc.start.allFinite(), "boundary.start", "must be finite");
    require(sc.goal.allFinite(), "boundary.goal", "must be finite");
    require(!sc.corridors.empty(), "corridors", "at least one corridor polytope is required");

    require(sc.limits.v_max > 0.0, "limits.v_max", "must be positive");
    require(sc.limits.a_max > 0.0, "limits.a_max", "must be positive");
    require(sc.limits.j_max > 0.0, "limits.j_max", "must be positive");

    const auto &w = sc.weights;
    const std::pair<const char *, double> nonneg[] = {{"w_T", w.w_T}, {"w_smooth", w.w_smooth}, {"w_SFC", w.w_sfc},
                                                      {"w_v", w.w_v}, {"w_a", w.w_a},           {"w_j", w.w_j},
                                                      {"w_dyn", w.w_dyn}, {"C_SFC", w.c_sfc}};
    for (const auto &[key, value] : nonneg)
        require(value >= 0.0, std::string("weights.") + key, "must be nonnegative");
    require(w.mu > 0.0, "weights.mu", "must be positive");
    require(w.c_dyn > 0.0, "weights.C_dyn", "must be positive");

    require(sc.kappa >= 2, "kappa", "must be at least 2");
    require(sc.collision_radius >= 0.0, "collision_radius", "must be nonnegative");
    for (std::size_t o = 0; o < sc.obstacles.size(); ++o)
        require(sc.obstacles[o].scale > 0.0, "obstacles[" + std::to_string(o) + "].scale", "must be positive");

    for (std::size_t s = 0; s < sc.corridors.size(); ++s)
    {
        const std::string field = "corridors[" + std::to_string(s) + "]";
        require(!sc.corridors[s].halfspaces.empty(), field, "polytope has no halfspaces");
        const auto ball = chebyshev_center(sc.corridors[s]);
        require(ball && ball->radius > 1e-9, field, "polytope has an empty interior");
    }
    for (std::size_t s = 0; s + 1 < sc.corridors.size(); ++s)
    {
        const auto ball = chebyshev_center(intersect(sc.corridors[s], sc.corridors[s + 1]));
        require(ball && ball->radius > 1e-9, "corridors[" + std::to_string(s + 1) + "]",
                "does not overlap the previous corridor");
    }

    if (sc.initial_guess)
    {
        const auto &g = *sc.initial_guess;
        require(g.segments() == sc.segments(), "initial_guess.durations",
                "expected " + std::to_string(sc.segments()) + " durations (one per corridor)");
    }
}

Scenario scenario_from_json(const json &doc)
{
    if (!doc.is_object())
        throw ScenarioError("$", "scenario document must be an object");
    const double version = number(doc, "version", "$");
    require(version == kScenarioVersion, "version",
            "unsupported schema version " + std::to_string(version) + " (expected " + std::to_string(kScenarioVersion) + ")");

    Scenario sc;
    if (doc.contains("name"))
    {
        require(doc["name"].is_string(), "name", "expected a string");
        sc.name = doc["name"].get<std::string>();
    }

    const json &boundary = member(doc, "boundary", "$");
    sc.start = knot(member(boundary, "start", "boundary"), "boundary.start");
    sc.goal = knot(member(boundary, "goal", "boundary"), "boundary.goal");

    const json &corridors = member(doc, "corridors", "$");
    require(corridors.is_array() && !corridors.empty(), "corridors", "expected a nonempty array of polytopes");
    for (std::size_t s = 0; s < corridors.size(); ++s)
        sc.corridors.push_back(polytope(corridors[s], "corridors[" + std::to_string(s) + "]"));

    const json &limits = member(doc, "limits", "$");
    sc.limits.v_max = number(limits, "v_max", "limits");
    sc.limits.a_max = number(limits, "a_max", "limits");
    sc.limits.j_max = number(limits, "j_max", "limits");

    const json &weights = member(doc, "weights", "$");
    Weights &w = sc.weights;
    w.w_T = number(weights, "w_T", "weights");
    w.w_smooth = number(weights, "w_smooth", "weights");
    w.w_sfc = number(weights, "w_SFC", "weights");
    w.w_v = number(weights, "w_v", "weights");
    w.w_a = number(weights, "w_a", "weights");
    w.w_j = number(weights, "w_j", "weights");
    w.w_dyn = number_or(weights, "w_dyn", "weights", w.w_dyn);
    w.mu = number_or(weights, "mu", "weights", w.mu);
    w.c_sfc = number_or(weights, "C_SFC", "weights", w.c_sfc);
    w.c_dyn = number_or(weights, "C_dyn", "weights", w.c_dyn);

    const json &obstacles = member(doc, "obstacles", "$");
    require(obstacles.is_array(), "obstacles", "expected an array");
    for (std::size_t o = 0; o < obstacles.size(); ++o)
    {
        const std::string p = "obstacles[" + std::to_string(o) + "]";
        ObstacleTrack t;
        t.center = vec3(member(obstacles[o], "center", p), p + ".center");
        t.scale = number(obstacles[o], "scale", p);
        t.omega = number(obstacles[o], "omega", p);
        t.phase = number_or(obstacles[o], "phase", p, 0.0);
        sc.obstacles.push_back(t);
    }

    sc.collision_radius = number_or(doc, "collision_radius", "$", sc.collision_radius);
    const double kappa = number(doc, "kappa", "$");
    require(kappa == std::floor(kappa), "kappa", "must be an integer");
    sc.kappa = static_cast<int>(kappa);
    const json &seed = member(doc, "seed", "$");
    require(seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0), "seed",
            "must be a nonnegative integer");
    sc.seed = seed.get<std::uint64_t>();

    if (doc.contains("initial_guess"))
    {
        try
        {
            sc.initial_guess = spline_from_json(doc["initial_guess"], "initial_guess");
        }
        catch (const DomainError &e)
        {
            throw ScenarioError("initial_guess", e.what());
        }
    }

    validate_scenario(sc);
    return sc;
}

json scenario_to_json(const Scenario &sc)
{
    json corridors = json::array();
    for (const auto &poly : sc.corridors)
    {
        json hs = json::array();
        for (const auto &h : poly.halfspaces)
            hs.push_back({{"a", vec3_json(h.a)}, {"b", h.b}});
        corridors.push_back(hs);
    }
    json obstacles = json::array();
    for (const auto &t : sc.obstacles)
        obstacles.push_back({{"center", vec3_json(t.center)}, {"scale", t.scale}, {"omega", t.omega}, {"phase", t.phase}});
    const Weights &w = sc.weights;
    json doc = {
        {"version", kScenarioVersion},
        {"name", sc.name},
        {"boundary", {{"start", knot_json(sc.start)}, {"goal", knot_json(sc.goal)}}},
        {"corridors", corridors},
        {"limits", {{"v_max", sc.limits.v_max}, {"a_max", sc.limits.a_max}, {"j_max", sc.limits.j_max}}},
        {"weights",
         {{"w_T", w.w_T}, {"w_smooth", w.w_smooth}, {"w_SFC", w.w_sfc}, {"w_v", w.w_v}, {"w_a", w.w_a},
          {"w_j", w.w_j}, {"w_dyn", w.w_dyn}, {"mu", w.mu}, {"C_SFC", w.c_sfc}, {"C_dyn", w.c_dyn}}},
        {"obstacles", obstacles},
        {"collision_radius", sc.collision_radius},
        {"kappa", sc.kappa},
        {"seed", sc.seed},
    };
    if (sc.initial_guess)
        doc["initial_guess"] = spline_to_json(*sc.initial_guess);
    return doc;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open scenario file " + path.string());
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ScenarioError("$", std::string("malformed JSON: ") + e.what());
    }
    return scenario_from_json(doc);
}

void save_scenario(const Scenario &scenario, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::ios_base::failure("cannot write scenario file " + path.string());
    out << scenario_to_json(scenario).dump(2) << '\n';
}

} // namespace mighty
