#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace mighty
{

struct SolverConfig
{
    int history = 8;
    double tol_g = 1e-6;          // infinity norm of the gradient
    double tol_f = 1e-9;          // |dJ| / max(1, |J|)
    int stall_iterations = 5;     // consecutive iterations below tol_f
    int max_iterations = 3000;
    double c1 = 1e-4;             // sufficient decrease
    double c2 = 0.9;              // curvature
    int max_linesearch = 40;

    void validate() const;
};

enum class Termination
{
    gradient,
    cost_change,
    max_iterations,
    line_search_failure,
};

std::string to_string(Termination t);

struct SolveResult
{
    Eigen::VectorXd z;
    std::vector<double> cost_history;  // initial cost, then one entry per accepted iterate
    int iterations = 0;
    int evaluations = 0;
    Termination reason = Termination::max_iterations;
    double wall_ms = 0.0;

    double final_cost() const { return cost_history.back(); }
};

// f(z, grad) returns the objective and writes the gradient.
using SmoothFunction = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd &)>;

// Limited-memory BFGS (two-loop recursion) with a strong-Wolfe line search.
// Throws DomainError when f(z0) is not finite.
SolveResult minimize(const SmoothFunction &f, const Eigen::VectorXd &z0, const SolverConfig &cfg = {});

} // namespace mighty
