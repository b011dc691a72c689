#pragma once

#include <mighty/types.hpp>

#include <optional>
#include <span>
#include <vector>

namespace mighty
{

// { x : a^T x <= b }
struct Halfspace
{
    Vec3 a = Vec3::UnitX();
    double b = 0.0;
};

// Intersection of halfspaces; one per trajectory segment in a corridor.
struct Polytope
{
    std::vector<Halfspace> halfspaces;

    // Largest violation max_h (a_h^T x - b_h + margin), scaled by |a_h|.
    double max_violation(const Vec3 &x, double margin = 0.0) const;
    bool contains(const Vec3 &x, double margin = 0.0, double tol = 0.0) const
    {
        return max_violation(x, margin) <= tol;
    }
};

Polytope intersect(const Polytope &a, const Polytope &b);

struct Ball
{
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
};

// Largest inscribed ball (deepest point). Unbounded directions are clipped to
// a |x_i| <= 1e4 box. Returns nullopt when the polytope is empty.
std::optional<Ball> chebyshev_center(const Polytope &poly);

// Maximizer of sum_h log(b_h - a_h^T x), started from a strictly interior point.
Vec3 analytic_center(const Polytope &poly, const Vec3 &interior);

// Axis-aligned boxes around consecutive polyline legs, inflated by half_widths.
// Throws DomainError for fewer than two points and InfeasibleError when two
// consecutive boxes do not overlap with positive volume.
std::vector<Polytope> box_corridor_helper(std::span<const Vec3> polyline, const Vec3 &half_widths);

Polytope axis_box(const Vec3 &lo, const Vec3 &hi);

} // namespace mighty
