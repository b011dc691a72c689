#pragma once

#include <mighty/scenario.hpp>
#include <mighty/transform.hpp>

#include <Eigen/Core>

#include <memory>
#include <string>

namespace mighty
{

// Bit mask selecting objective terms.
namespace cost_term
{
enum : unsigned
{
    time = 1u << 0,
    smooth = 1u << 1,
    sfc = 1u << 2,
    vel = 1u << 3,
    acc = 1u << 4,
    jerk = 1u << 5,
    dyn = 1u << 6,
    all = (1u << 7) - 1,
};
}

enum class SmoothnessForm
{
    surrogate,  // diagonal weights, default
    exact,      // full Gram matrix
};

struct ObjectiveOptions
{
    DerivativeScaling scaling = DerivativeScaling::scaled;
    SmoothnessForm smoothness = SmoothnessForm::surrogate;
    std::array<double, 3> surrogate_weights = default_surrogate_weights();
    unsigned terms = cost_term::all;
};

// Weighted value of each objective term.
struct CostBreakdown
{
    double time = 0.0;
    double smooth = 0.0;
    double sfc = 0.0;
    double vel = 0.0;
    double acc = 0.0;
    double jerk = 0.0;
    double dyn = 0.0;

    double total() const { return time + smooth + sfc + vel + acc + jerk + dyn; }
};

// |sigma| beyond this is rejected with kDivergedCost instead of evaluating exp.
inline constexpr double kMaxLogDuration = 50.0;
inline constexpr double kDivergedCost = 1e30;

// Total objective
//   w_T sum T + w_smooth J_smooth + w_SFC J_SFC + w_v J_v + w_a J_a + w_j J_j + w_dyn J_dyn
// over the decision vector, with its exact gradient.
class TrajectoryObjective
{
public:
    explicit TrajectoryObjective(Scenario scenario, ObjectiveOptions options = {});

    double operator()(const Eigen::VectorXd &z, Eigen::VectorXd *grad) const { return evaluate(z, grad); }
    double evaluate(const Eigen::VectorXd &z, Eigen::VectorXd *grad, CostBreakdown *breakdown = nullptr) const;

    // Same objective on physical spline variables.
    double evaluate_spline(const HermiteSpline &spline, RawGradient *raw, CostBreakdown *breakdown = nullptr) const;

    HermiteSpline spline(const Eigen::VectorXd &z) const;
    Eigen::VectorXd pack(const HermiteSpline &spline) const;
    CostBreakdown breakdown(const Eigen::VectorXd &z) const;

    int dimension() const { return DecisionLayout{scenario_.segments()}.size(); }
    const Scenario &scenario() const { return scenario_; }
    const ObjectiveOptions &options() const { return options_; }

private:
    Scenario scenario_;
    ObjectiveOptions options_;
    std::shared_ptr<const BasisTable> table_;
};

} // namespace mighty
