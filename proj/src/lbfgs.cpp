#include <mighty/lbfgs.hpp>
#include <mighty/types.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

namespace mighty
{

void SolverConfig::validate() const
{
    if (history < 1)
        throw ConfigError("solver history must be >= 1");
    if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0))
        throw ConfigError("line search constants must satisfy 0 < c1 < c2 < 1");
    if (!(tol_g >= 0.0) || !(tol_f >= 0.0))
        throw ConfigError("solver tolerances must be nonnegative");
    if (max_linesearch < 1 || max_iterations < 0 || stall_iterations < 1)
        throw ConfigError("solver iteration limits must be positive");
}

std::string to_string(Termination t)
{
    switch (t)
    {
    case Termination::gradient: return "gradient";
    case Termination::cost_change: return "cost-change";
    case Termination::max_iterations: return "max-iter";
    case Termination::line_search_failure: return "line-search-failure";
    }
    return "unknown";
}

namespace
{

struct Trial
{
    double alpha = 0.0;
    double f = 0.0;
    double slope = 0.0;  // directional derivative
    Eigen::VectorXd z, g;
    bool finite = false;
};

// Minimizer of the cubic through (a, fa, da), (b, fb, db); falls back to bisection.
double cubic_step(double a, double fa, double da, double b, double fb, double db)
{
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (disc >= 0.0)
    {
        const double d2 = std::copysign(std::sqrt(disc), b - a);
        const double denom = db - da + 2.0 * d2;
        if (denom != 0.0)
        {
            const double x = b - (b - a) * (db + d2 - d1) / denom;
            if (std::isfinite(x))
                return x;
        }
    }
    return 0.5 * (a + b);
}

class LineSearch
{
public:
    LineSearch(const SmoothFunction &f, const SolverConfig &cfg, int &evaluations)
        : f_(f), cfg_(cfg), evaluations_(evaluations)
    {
    }

    // Returns true with `out` satisfying the strong Wolfe conditions, or false
    // with `out` holding the best sufficient-decrease point found (alpha = 0 if none).
    bool search(const Eigen::VectorXd &z, double f0, const Eigen::VectorXd &g0, const Eigen::VectorXd &d,
                double alpha0, Trial &out)
    {
        z_ = &z;
        d_ = &d;
        f0_ = f0;
        slope0_ = g0.dot(d);
        trials_ = 0;
        best_ = Trial{};
        best_.f = f0;

        Trial prev;
        prev.alpha = 0.0;
        prev.f = f0;
        prev.slope = slope0_;
        prev.finite = true;
        double alpha = alpha0;
        for (int i = 0; trials_ < cfg_.max_linesearch; ++i)
        {
            Trial cur = eval(alpha);
            if (!cur.finite || !armijo(cur) || (i > 0 && cur.f >= prev.f))
                return zoom(prev, cur, out);
            if (std::abs(cur.slope) <= -cfg_.c2 * slope0_)
            {
                out = std::move(cur);
                return true;
            }
            if (cur.slope >= 0.0)
                return zoom(cur, prev, out);
            prev = std::move(cur);
            alpha *= 2.0;
        }
        out = best_;
        return false;
    }

private:
    bool armijo(const Trial &t) const { return t.f <= f0_ + cfg_.c1 * t.alpha * slope0_; }

    Trial eval(double alpha)
    {
        ++trials_;
        ++evaluations_;
        Trial t;
        t.alpha = alpha;
        t.z = *z_ + alpha * *d_;
        t.g.resize(t.z.size());
        t.f = f_(t.z, t.g);
        t.finite = std::isfinite(t.f) && t.g.allFinite();
        if (t.finite)
        {
            t.slope = t.g.dot(*d_);
            if (armijo(t) && t.f < best_.f)
                best_ = t;
        }
        return t;
    }

    // lo satisfies sufficient decrease and has the lowest value seen so far.
    bool zoom(Trial lo, Trial hi, Trial &out)
    {
        while (trials_ < cfg_.max_linesearch)
        {
            const double a = std::min(lo.alpha, hi.alpha);
            const double b = std::max(lo.alpha, hi.alpha);
            const double width = b - a;
            if (!(width > 1e-16 * std::max(1.0, b)))
                break;
            double alpha = hi.finite ? cubic_step(lo.alpha, lo.f, lo.slope, hi.alpha, hi.f, hi.slope)
                                     : 0.5 * (lo.alpha + hi.alpha);
            alpha = std::clamp(alpha, a + 0.1 * width, b - 0.1 * width);

            Trial cur = eval(alpha);
            if (!cur.finite || !armijo(cur) || cur.f >= lo.f)
            {
                hi = std::move(cur);
                continue;
            }
            if (std::abs(cur.slope) <= -cfg_.c2 * slope0_)
            {
                out = std::move(cur);
                return true;
            }
            if (cur.slope * (hi.alpha - lo.alpha) >= 0.0)
                hi = lo;
            lo = std::move(cur);
        }
        out = best_;
        return false;
    }

    const SmoothFunction &f_;
    const SolverConfig &cfg_;
    int &evaluations_;
    const Eigen::VectorXd *z_ = nullptr;
    const Eigen::VectorXd *d_ = nullptr;
    double f0_ = 0.0;
    double slope0_ = 0.0;
    int trials_ = 0;
    Trial best_;
};

} // namespace

SolveResult minimize(const SmoothFunction &f, const Eigen::VectorXd &z0, const SolverConfig &cfg)
{
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    const Eigen::Index n = z0.size();

    SolveResult result;
    Eigen::VectorXd z = z0;
    Eigen::VectorXd g(n);
    double fz = f(z, g);
    result.evaluations = 1;
    if (!std::isfinite(fz) || !g.allFinite())
        throw DomainError("minimize: objective is not finite at the initial point");
    result.cost_history.push_back(fz);

    std::deque<Eigen::VectorXd> S, Y;
    std::deque<double> rho;
    double gamma = 1.0;
    int stalled = 0;
    LineSearch ls(f, cfg, result.evaluations);

    auto finish = [&](Termination reason) {
        result.z = z;
        result.reason = reason;
        result.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        return result;
    };

    while (true)
    {
        if (g.lpNorm<Eigen::Infinity>() <= cfg.tol_g)
            return finish(Termination::gradient);
        if (result.iterations >= cfg.max_iterations)
            return finish(Termination::max_iterations);

        // two-loop recursion
        Eigen::VectorXd d = -g;
        const int m = static_cast<int>(S.size());
        std::vector<double> alpha(m);
        for (int i = m - 1; i >= 0; --i)
        {
            alpha[i] = rho[i] * S[i].dot(d);
            d -= alpha[i] * Y[i];
        }
        d *= gamma;
        for (int i = 0; i < m; ++i)
        {
            const double beta = rho[i] * Y[i].dot(d);
            d += (alpha[i] - beta) * S[i];
        }
        if (!(g.dot(d) < 0.0))
        {
            S.clear();
            Y.clear();
            rho.clear();
            gamma = 1.0;
            d = -g;
        }

        const double step0 = S.empty() ? std::min(1.0, 1.0 / d.norm()) : 1.0;
        Trial next;
        const bool wolfe = ls.search(z, fz, g, d, step0, next);
        if (!wolfe && (next.alpha == 0.0 || !(next.f < fz)))
        {
            if (!S.empty())
            {
                // retry once along steepest descent with a fresh memory
                S.clear();
                Y.clear();
                rho.clear();
                gamma = 1.0;
                continue;
            }
            return finish(Termination::line_search_failure);
        }

        Eigen::VectorXd s = next.z - z;
        Eigen::VectorXd y = next.g - g;
        const double fprev = fz;
        z = std::move(next.z);
        g = std::move(next.g);
        fz = next.f;
        ++result.iterations;
        result.cost_history.push_back(fz);

        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm())
        {
            if (static_cast<int>(S.size()) == cfg.history)
            {
                S.pop_front();
                Y.pop_front();
                rho.pop_front();
            }
            gamma = sy / y.squaredNorm();
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
        }

        if (std::abs(fprev - fz) / std::max(1.0, std::abs(fz)) <= cfg.tol_f)
        {
            if (++stalled >= cfg.stall_iterations)
                return finish(Termination::cost_change);
        }
        else
        {
            stalled = 0;
        }
    }
}

} // namespace mighty
