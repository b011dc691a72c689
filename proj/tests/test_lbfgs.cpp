#include <mighty/lbfgs.hpp>
#include <mighty/types.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace mighty;

namespace
{

double rosenbrock(const Eigen::VectorXd &z, Eigen::VectorXd &g)
{
    const double x = z[0], y = z[1];
    g.resize(2);
    g[0] = -2.0 * (1.0 - x) - 400.0 * x * (y - x * x);
    g[1] = 200.0 * (y - x * x);
    return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
}

} // namespace

TEST(Lbfgs, ConvexQuadratic)
{
    Eigen::VectorXd diag(6);
    diag << 1, 2, 5, 10, 50, 100;
    const Eigen::VectorXd target = Eigen::VectorXd::LinSpaced(6, -1.0, 1.0);
    const SmoothFunction f = [&](const Eigen::VectorXd &z, Eigen::VectorXd &g) {
        const Eigen::VectorXd d = z - target;
        g = diag.cwiseProduct(d);
        return 0.5 * d.dot(g);
    };
    const auto r = minimize(f, Eigen::VectorXd::Zero(6));
    EXPECT_EQ(r.reason, Termination::gradient);
    EXPECT_LE((r.z - target).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(Lbfgs, Rosenbrock)
{
    Eigen::VectorXd z0(2);
    z0 << -1.2, 1.0;
    SolverConfig cfg;
    cfg.max_iterations = 200;
    cfg.tol_f = 0.0;
    const auto r = minimize(rosenbrock, z0, cfg);
    EXPECT_LE(r.final_cost(), 1e-8);
    EXPECT_LE(r.iterations, 200);
    EXPECT_NEAR(r.z[0], 1.0, 1e-4);
}

TEST(Lbfgs, CostHistoryIsMonotone)
{
    Eigen::VectorXd z0(2);
    z0 << -1.2, 1.0;
    const auto r = minimize(rosenbrock, z0);
    ASSERT_GE(r.cost_history.size(), 2u);
    EXPECT_EQ(static_cast<int>(r.cost_history.size()), r.iterations + 1);
    for (std::size_t k = 1; k < r.cost_history.size(); ++k)
        EXPECT_LE(r.cost_history[k], r.cost_history[k - 1]);
}

TEST(Lbfgs, Deterministic)
{
    Eigen::VectorXd z0(2);
    z0 << 0.3, -0.7;
    const auto a = minimize(rosenbrock, z0), b = minimize(rosenbrock, z0);
    EXPECT_EQ(a.z, b.z);
    EXPECT_EQ(a.cost_history, b.cost_history);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Lbfgs, AlreadyOptimal)
{
    const SmoothFunction f = [](const Eigen::VectorXd &z, Eigen::VectorXd &g) {
        g = z;
        return 0.5 * z.squaredNorm();
    };
    const auto r = minimize(f, Eigen::VectorXd::Zero(3));
    EXPECT_EQ(r.iterations, 0);
    EXPECT_EQ(r.reason, Termination::gradient);
}

TEST(Lbfgs, IterationCap)
{
    Eigen::VectorXd z0(2);
    z0 << -1.2, 1.0;
    SolverConfig cfg;
    cfg.max_iterations = 3;
    const auto r = minimize(rosenbrock, z0, cfg);
    EXPECT_EQ(r.reason, Termination::max_iterations);
    EXPECT_EQ(r.iterations, 3);
}

TEST(Lbfgs, CostChangeStall)
{
    // flat valley: gradient never reaches a tight tolerance but the cost stalls
    const SmoothFunction f = [](const Eigen::VectorXd &z, Eigen::VectorXd &g) {
        g.resize(1);
        g[0] = 4.0 * std::pow(z[0], 3);
        return std::pow(z[0], 4) + 1.0;
    };
    SolverConfig cfg;
    cfg.tol_g = 1e-300;
    const auto r = minimize(f, Eigen::VectorXd::Constant(1, 1.3), cfg);
    EXPECT_EQ(r.reason, Termination::cost_change);
}

TEST(Lbfgs, NonFiniteStartThrows)
{
    const SmoothFunction f = [](const Eigen::VectorXd &z, Eigen::VectorXd &g) {
        g = z;
        return std::nan("");
    };
    EXPECT_THROW(minimize(f, Eigen::VectorXd::Zero(2)), DomainError);
}

TEST(Lbfgs, ConfigValidation)
{
    SolverConfig cfg;
    cfg.history = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.c1 = 0.95;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.tol_g = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Lbfgs, TerminationNames)
{
    EXPECT_EQ(to_string(Termination::gradient), "gradient");
    EXPECT_EQ(to_string(Termination::cost_change), "cost-change");
    EXPECT_EQ(to_string(Termination::max_iterations), "max-iter");
    EXPECT_EQ(to_string(Termination::line_search_failure), "line-search-failure");
}
