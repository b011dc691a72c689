#include <mighty/fixtures.hpp>
#include <mighty/initial_guess.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mighty
{

namespace
{

KnotState at_rest(const Vec3 &p)
{
    KnotState k;
    k.p = p;
    return k;
}

} // namespace

Scenario make_corner_scenario()
{
    Scenario sc;
    sc.name = "corner";
    const std::vector<Vec3> guide = {{0, 0, 1}, {4, 0, 1}, {4, 4, 1}, {4, 8, 1}};
    sc.corridors = box_corridor_helper(guide, Vec3(0.6, 0.6, 0.6));
    sc.start = at_rest(guide.front());
    sc.goal = at_rest(guide.back());
    sc.limits = {1.0, 5.0, 30.0};
    sc.weights.w_T = 1e2;
    sc.weights.w_smooth = 1e-5;
    sc.weights.w_sfc = 1e4;
    sc.weights.w_v = 1e4;
    sc.weights.w_a = 1e4;
    sc.weights.w_j = 1e4;
    sc.kappa = 16;
    sc.seed = 1;
    return sc;
}

Scenario make_forest_scenario(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lateral(-2.5, 2.5), height(2.5, 3.5);
    Scenario sc;
    sc.name = "forest";
    std::vector<Vec3> guide = {{0, 0, 3}};
    for (int k = 1; k <= 5; ++k)
        guide.emplace_back(6.0 * k, lateral(rng), height(rng));
    guide.emplace_back(36.0, 0.0, 3.0);
    sc.corridors = box_corridor_helper(guide, Vec3(1.0, 1.0, 1.0));
    sc.start = at_rest(guide.front());
    sc.goal = at_rest(guide.back());
    sc.limits = {4.0, 10.0, 30.0};
    sc.weights = Weights{};
    sc.kappa = 16;
    sc.seed = seed;
    return sc;
}

Scenario make_dynamic_scenario(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(4.0, 16.0), uy(-2.0, 2.0), uz(2.0, 4.0), scale(0.2, 0.4),
        omega(0.2, 0.5), phase(0.0, 2.0 * std::numbers::pi);
    Scenario sc;
    sc.name = "dynamic-" + std::to_string(seed);
    const std::vector<Vec3> guide = {{0, 0, 3}, {5, 0, 3}, {10, 0, 3}, {15, 0, 3}, {20, 0, 3}};
    sc.corridors = box_corridor_helper(guide, Vec3(1.0, 4.0, 2.0));
    sc.start = at_rest(guide.front());
    sc.goal = at_rest(guide.back());
    sc.limits = {2.0, 5.0, 30.0};
    sc.weights = Weights{};
    sc.weights.w_dyn = 1e1;
    sc.weights.c_dyn = 3.0;
    sc.collision_radius = 0.1;
    for (int o = 0; o < 5; ++o)
    {
        ObstacleTrack t;
        t.center = Vec3(ux(rng), uy(rng), uz(rng));
        t.scale = scale(rng);
        t.omega = omega(rng);
        t.phase = phase(rng);
        sc.obstacles.push_back(t);
    }
    sc.kappa = 16;
    sc.seed = seed;
    return sc;
}

Scenario make_random_scenario(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> legs(3, 6);
    std::uniform_real_distribution<double> length(2.0, 6.0), turn(-1.2, 1.2), climb(-0.3, 0.3), width(0.8, 1.2),
        speed(1.0, 4.0);
    Scenario sc;
    sc.name = "random-" + std::to_string(seed);
    std::vector<Vec3> guide = {{0, 0, 2}};
    double heading = 0.0;
    const int n = legs(rng);
    for (int k = 0; k < n; ++k)
    {
        heading += turn(rng);
        const double len = length(rng);
        guide.push_back(guide.back() + Vec3(len * std::cos(heading), len * std::sin(heading), climb(rng)));
    }
    const double w = width(rng);
    sc.corridors = box_corridor_helper(guide, Vec3(w, w, w));
    sc.start = at_rest(guide.front());
    sc.goal = at_rest(guide.back());
    sc.limits = {speed(rng), 10.0, 30.0};
    sc.weights = Weights{};
    sc.kappa = 16;
    sc.seed = seed;
    return sc;
}

AuditCase make_audit_case(std::uint64_t seed, int segments, DerivativeScaling scaling)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    Scenario sc;
    sc.name = "audit-" + std::to_string(seed);
    std::vector<Vec3> guide = {{0, 0, 0}};
    double heading = 0.0;
    for (int k = 0; k < segments; ++k)
    {
        heading += between(-1.0, 1.0);
        const double len = between(1.0, 2.0);
        guide.push_back(guide.back() + Vec3(len * std::cos(heading), len * std::sin(heading), between(-0.2, 0.2)));
    }
    sc.corridors = box_corridor_helper(guide, Vec3::Constant(between(0.3, 0.5)));
    sc.start = at_rest(guide.front());
    sc.start.v = Vec3(noise(rng), noise(rng), noise(rng)) * 0.3;
    sc.goal = at_rest(guide.back());
    sc.limits.v_max = between(0.3, 0.6);  // sets the guess durations; replaced below

    Weights &w = sc.weights;
    w.w_T = between(0.5, 2.0);
    w.w_smooth = between(1e-3, 1e-2);
    w.w_sfc = between(0.5, 2.0);
    w.w_v = between(0.5, 2.0);
    w.w_a = between(0.5, 2.0);
    w.w_j = between(0.05, 0.2);
    w.w_dyn = between(0.5, 2.0);
    w.mu = between(0.05, 0.2);
    w.c_sfc = 0.2;
    w.c_dyn = between(0.8, 1.2);
    sc.kappa = 8 + static_cast<int>(unit(rng) * 9);
    sc.seed = seed;

    // perturbed guess; obstacles sit close to its knots so the barrier is active
    const HermiteSpline guess = initial_guess(sc);
    Eigen::VectorXd z = pack(guess, scaling);
    const DecisionLayout layout{segments};
    for (int i = 1; i < segments; ++i)
        for (int q = 0; q < 9; ++q)
            z[layout.p(i) + q] += 0.3 * noise(rng);
    for (int s = 0; s < segments; ++s)
        z[layout.sigma(s)] += 0.3 * noise(rng);

    const HermiteSpline perturbed = unpack(z, sc.start, sc.goal, scaling);

    // limits below the perturbed peaks so every limit term is active
    double peak_v = 0.0, peak_a = 0.0, peak_j = 0.0;
    for (int k = 0; k <= 200; ++k)
    {
        const State st = eval_state(perturbed, perturbed.total_duration() * k / 200.0);
        peak_v = std::max(peak_v, st.v.norm());
        peak_a = std::max(peak_a, st.a.norm());
        peak_j = std::max(peak_j, st.j.norm());
    }
    sc.limits.v_max = between(0.3, 0.7) * peak_v;
    sc.limits.a_max = between(0.3, 0.7) * peak_a;
    sc.limits.j_max = between(0.3, 0.7) * peak_j;
    const int tracks = 1 + segments / 3;
    for (int o = 0; o < tracks; ++o)
    {
        const double t = between(0.1, 0.9) * perturbed.total_duration();
        ObstacleTrack track;
        track.scale = between(0.05, 0.15);
        track.omega = between(0.5, 2.0);
        track.phase = between(0.0, 6.28);
        const Vec3 offset = Vec3(noise(rng), noise(rng), noise(rng)) * 0.2;
        track.center = eval_state(perturbed, t).x + offset - (track.position(t) - track.center);
        sc.obstacles.push_back(track);
    }
    validate_scenario(sc);
    return {sc, z, scaling};
}

} // namespace mighty
