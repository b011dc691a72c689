#pragma once

// Test-only reference implementations, derived independently of the library paths.

#include <mighty/spline.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>

namespace oracle
{

using mighty::KnotState;
using mighty::Vec3;

// Monomial coefficients k_0..k_5 (per axis) of the quintic matching
// x(0), x'(0), x''(0), x(1), x'(1), x''(1) in normalized time.
inline Eigen::Matrix<double, 6, 3> quintic_monomial(const KnotState &s0, const KnotState &s1, double T)
{
    Eigen::Matrix<double, 6, 6> A;
    A << 1, 0, 0, 0, 0, 0,
         0, 1, 0, 0, 0, 0,
         0, 0, 2, 0, 0, 0,
         1, 1, 1, 1, 1, 1,
         0, 1, 2, 3, 4, 5,
         0, 0, 2, 6, 12, 20;
    Eigen::Matrix<double, 6, 3> rhs;
    rhs.row(0) = s0.p.transpose();
    rhs.row(1) = T * s0.v.transpose();
    rhs.row(2) = T * T * s0.a.transpose();
    rhs.row(3) = s1.p.transpose();
    rhs.row(4) = T * s1.v.transpose();
    rhs.row(5) = T * T * s1.a.transpose();
    return A.fullPivLu().solve(rhs);
}

// d-th derivative w.r.t. physical time of the monomial segment at tau.
inline Vec3 monomial_derivative(const Eigen::Matrix<double, 6, 3> &k, double T, double tau, int d)
{
    Vec3 out = Vec3::Zero();
    for (int n = d; n < 6; ++n)
    {
        double falling = 1.0;
        for (int q = 0; q < d; ++q)
            falling *= (n - q);
        out += falling * std::pow(tau, n - d) * k.row(n).transpose();
    }
    return out / std::pow(T, d);
}

// Scalar 6x6 Jacobian of control points w.r.t. (p0, v0, a0, p1, v1, a1), entries
// read off the Hermite-to-Bezier map.
inline Eigen::Matrix<double, 6, 6> hermite_bezier_matrix(double T)
{
    const double a = T / 5.0, b = 2.0 * T / 5.0, c = T * T / 20.0;
    Eigen::Matrix<double, 6, 6> C;
    C << 1, 0, 0, 0, 0, 0,
         1, a, 0, 0, 0, 0,
         1, b, c, 0, 0, 0,
         0, 0, 0, 1, -b, c,
         0, 0, 0, 1, -a, 0,
         0, 0, 0, 1, 0, 0;
    return C;
}

// Point-in-convex-hull via Caratheodory: x lies in the hull iff it is a convex
// combination of at most four of the points.
inline bool in_convex_hull(const std::array<Vec3, 6> &pts, const Vec3 &x, double tol)
{
    for (int mask = 1; mask < 64; ++mask)
    {
        std::vector<int> idx;
        for (int i = 0; i < 6; ++i)
            if (mask & (1 << i))
                idx.push_back(i);
        if (idx.size() > 4)
            continue;
        const int k = static_cast<int>(idx.size());
        Eigen::MatrixXd A(4, k);
        Eigen::Vector4d rhs(x.x(), x.y(), x.z(), 1.0);
        for (int q = 0; q < k; ++q)
            A.col(q) << pts[idx[q]], 1.0;
        const Eigen::VectorXd lambda = A.completeOrthogonalDecomposition().solve(rhs);
        if ((A * lambda - rhs).norm() <= tol && lambda.minCoeff() >= -tol)
            return true;
    }
    return false;
}

inline KnotState random_knot(std::mt19937_64 &rng, double scale = 1.0)
{
    std::normal_distribution<double> n(0.0, scale);
    KnotState k;
    k.p = Vec3(n(rng), n(rng), n(rng));
    k.v = Vec3(n(rng), n(rng), n(rng));
    k.a = Vec3(n(rng), n(rng), n(rng));
    return k;
}

inline mighty::HermiteSpline random_spline(std::mt19937_64 &rng, int segments)
{
    std::uniform_real_distribution<double> dur(0.3, 3.0);
    std::vector<KnotState> knots;
    std::vector<double> T;
    for (int i = 0; i <= segments; ++i)
        knots.push_back(random_knot(rng));
    for (int s = 0; s < segments; ++s)
        T.push_back(dur(rng));
    return mighty::HermiteSpline(knots, T);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace oracle
