#pragma once

#include <mighty/types.hpp>

#include <array>
#include <span>
#include <vector>

namespace mighty
{

// Quintic Bezier segment over physical duration T.
struct BezierSegment
{
    std::array<Vec3, 6> c{};
    double T = 1.0;
};

// Trajectory state at one instant.
struct State
{
    Vec3 x = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Vec3 a = Vec3::Zero();
    Vec3 j = Vec3::Zero();
};

// Control points of the Bezier segment with the given endpoint states.
// The curve interpolates position, velocity and acceleration at both ends.
BezierSegment hermite_to_bezier(const KnotState &start, const KnotState &end, double T);

// Control points of the order-th time derivative (order 1..3 gives 5, 4, 3 points).
std::vector<Vec3> bezier_derivative_cpoints(const BezierSegment &seg, int order);

// State at normalized time tau in [0,1] (not range-checked).
State eval_segment(const BezierSegment &seg, double tau);

// Piecewise quintic Hermite spline: M+1 knots, M positive durations.
class HermiteSpline
{
public:
    HermiteSpline() = default;
    HermiteSpline(std::vector<KnotState> knots, std::vector<double> durations);

    int segments() const { return static_cast<int>(durations_.size()); }
    const std::vector<KnotState> &knots() const { return knots_; }
    const std::vector<double> &durations() const { return durations_; }
    const KnotState &knot(int i) const { return knots_[i]; }
    double duration(int s) const { return durations_[s]; }

    double total_duration() const;
    double start_time(int s) const;
    BezierSegment segment(int s) const;
    std::vector<BezierSegment> bezier() const;

private:
    std::vector<KnotState> knots_;
    std::vector<double> durations_;
};

struct SegmentLocation
{
    int segment = 0;
    double tau = 0.0;
};

// Interior knot times resolve to tau = 0 of the following segment; the final
// time resolves to tau = 1 of the last segment.
SegmentLocation locate(const HermiteSpline &spline, double t);

State eval_state(const HermiteSpline &spline, double t);

struct KnotMismatch
{
    int knot = 0;  // interior knot index (1..M-1)
    double x = 0.0;
    double v = 0.0;
    double a = 0.0;
};

// Left/right limit mismatch of x, v, a at each interior knot of a chain of segments.
std::vector<KnotMismatch> continuity_report(std::span<const BezierSegment> segments);
std::vector<KnotMismatch> continuity_report(const HermiteSpline &spline);

} // namespace mighty
