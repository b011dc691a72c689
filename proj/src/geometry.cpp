#include <mighty/geometry.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mighty
{

namespace
{

constexpr double kBoxBound = 1e4;

// Rows (a^T, b) with unit normals, optionally plus the clipping box.
void normalized_rows(const Polytope &poly, std::vector<Vec3> &A, std::vector<double> &b, bool clip = true)
{
    for (const auto &h : poly.halfspaces)
    {
        const double n = h.a.norm();
        if (!(n > 0.0))
            throw DomainError("polytope halfspace with zero normal");
        A.push_back(h.a / n);
        b.push_back(h.b / n);
    }
    if (!clip)
        return;
    for (int i = 0; i < 3; ++i)
    {
        A.push_back(Vec3::Unit(i));
        b.push_back(kBoxBound);
        A.push_back(-Vec3::Unit(i));
        b.push_back(kBoxBound);
    }
}

} // namespace

double Polytope::max_violation(const Vec3 &x, double margin) const
{
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto &h : halfspaces)
        worst = std::max(worst, (h.a.dot(x) - h.b) / h.a.norm() + margin);
    return worst;
}

Polytope intersect(const Polytope &a, const Polytope &b)
{
    Polytope out = a;
    out.halfspaces.insert(out.halfspaces.end(), b.halfspaces.begin(), b.halfspaces.end());
    return out;
}

std::optional<Ball> chebyshev_center(const Polytope &poly)
{
    // max r s.t. a_h^T x + r <= b_h (unit normals), r >= 0. The LP optimum sits
    // at a vertex of the (x, r) feasible set; enumerate 4-row active sets.
    std::vector<Vec3> A;
    std::vector<double> b;
    normalized_rows(poly, A, b);
    const int m = static_cast<int>(A.size());

    std::vector<Eigen::Vector4d> rows;
    std::vector<double> rhs;
    for (int h = 0; h < m; ++h)
    {
        rows.emplace_back(A[h].x(), A[h].y(), A[h].z(), 1.0);
        rhs.push_back(b[h]);
    }
    rows.emplace_back(0.0, 0.0, 0.0, -1.0);
    rhs.push_back(0.0);
    const int n = static_cast<int>(rows.size());

    std::optional<Ball> best;
    Eigen::Matrix4d K;
    Eigen::Vector4d k;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = i0 + 1; i1 < n; ++i1)
            for (int i2 = i1 + 1; i2 < n; ++i2)
                for (int i3 = i2 + 1; i3 < n; ++i3)
                {
                    const int idx[4] = {i0, i1, i2, i3};
                    for (int r = 0; r < 4; ++r)
                    {
                        K.row(r) = rows[idx[r]].transpose();
                        k[r] = rhs[idx[r]];
                    }
                    Eigen::FullPivLU<Eigen::Matrix4d> lu(K);
                    if (lu.rank() < 4)
                        continue;
                    const Eigen::Vector4d sol = lu.solve(k);
                    if (!sol.allFinite())
                        continue;
                    if (best && sol[3] <= best->radius)
                        continue;
                    bool feasible = true;
                    for (int q = 0; q < n && feasible; ++q)
                        feasible = rows[q].dot(sol) <= rhs[q] + 1e-9 * (1.0 + std::abs(rhs[q]));
                    if (feasible)
                        best = Ball{sol.head<3>(), std::max(0.0, sol[3])};
                }
    return best;
}

namespace
{

// Damped Newton on the log barrier; nullopt if the iterate escapes the
// clipping bound (the barrier is unbounded below for unbounded polytopes).
std::optional<Vec3> newton_center(const std::vector<Vec3> &A, const std::vector<double> &b, const Vec3 &interior)
{
    const int m = static_cast<int>(A.size());
    auto barrier = [&](const Vec3 &x, double &f) {
        f = 0.0;
        for (int h = 0; h < m; ++h)
        {
            const double s = b[h] - A[h].dot(x);
            if (!(s > 0.0))
                return false;
            f -= std::log(s);
        }
        return true;
    };

    Vec3 x = interior;
    double f;
    if (!barrier(x, f))
        throw DomainError("analytic_center: start point is not strictly interior");
    for (int iter = 0; iter < 200; ++iter)
    {
        Vec3 g = Vec3::Zero();
        Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
        for (int h = 0; h < m; ++h)
        {
            const double s = b[h] - A[h].dot(x);
            g += A[h] / s;
            H += A[h] * A[h].transpose() / (s * s);
        }
        const Eigen::LDLT<Eigen::Matrix3d> ldlt(H);
        if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 1e-14 * ldlt.vectorD().maxCoeff()))
            return std::nullopt;
        const Vec3 dx = -ldlt.solve(g);
        const double decrement = -g.dot(dx);
        if (!(decrement > 1e-24))
            break;
        double step = 1.0, fn;
        // inside the quadratic-convergence region the decrease is below round-off, so take the full step
        const bool local = decrement < 1e-6 && barrier(x + dx, fn);
        while (!local && step > 1e-12 && (!barrier(x + step * dx, fn) || fn > f - 0.25 * step * decrement))
            step *= 0.5;
        if (step <= 1e-12)
            break;
        x += step * dx;
        f = fn;
        if (x.lpNorm<Eigen::Infinity>() > kBoxBound)
            return std::nullopt;
    }
    return x;
}

} // namespace

Vec3 analytic_center(const Polytope &poly, const Vec3 &interior)
{
    std::vector<Vec3> A;
    std::vector<double> b;
    normalized_rows(poly, A, b, false);
    if (auto x = newton_center(A, b, interior))
        return *x;
    A.clear();
    b.clear();
    normalized_rows(poly, A, b, true);
    if (auto x = newton_center(A, b, interior))
        return *x;
    return interior;
}

Polytope axis_box(const Vec3 &lo, const Vec3 &hi)
{
    Polytope p;
    for (int i = 0; i < 3; ++i)
    {
        p.halfspaces.push_back({Vec3::Unit(i), hi[i]});
        p.halfspaces.push_back({-Vec3::Unit(i) + Vec3::Zero(), -lo[i]});
    }
    return p;
}

std::vector<Polytope> box_corridor_helper(std::span<const Vec3> polyline, const Vec3 &half_widths)
{
    if (polyline.size() < 2)
        throw DomainError("box_corridor_helper: polyline needs at least two points");
    if (!(half_widths.minCoeff() > 0.0))
        throw DomainError("box_corridor_helper: half-widths must be positive");
    std::vector<Vec3> lo, hi;
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k)
    {
        lo.push_back(polyline[k].cwiseMin(polyline[k + 1]) - half_widths);
        hi.push_back(polyline[k].cwiseMax(polyline[k + 1]) + half_widths);
    }
    for (std::size_t k = 0; k + 1 < lo.size(); ++k)
    {
        const Vec3 olo = lo[k].cwiseMax(lo[k + 1]);
        const Vec3 ohi = hi[k].cwiseMin(hi[k + 1]);
        if (!((ohi - olo).minCoeff() > 0.0))
            throw InfeasibleError("box_corridor_helper: boxes " + std::to_string(k) + " and " +
                                  std::to_string(k + 1) + " do not overlap; increase the half-widths");
    }
    std::vector<Polytope> boxes;
    for (std::size_t k = 0; k < lo.size(); ++k)
        boxes.push_back(axis_box(lo[k], hi[k]));
    return boxes;
}

} // namespace mighty
