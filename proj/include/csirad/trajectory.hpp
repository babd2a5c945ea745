#pragma once

#include <optional>
#include <vector>

namespace csirad {

struct Waypoint {
    double t = 0.0;
    double range_m = 0.0;
    std::optional<double> velocity_mps;  ///< slope of the segment when absent
};

/// Piecewise-linear range-vs-time path with strictly increasing timestamps.
/// Queries outside [start, end] hold the end values.
class Trajectory {
public:
    static Trajectory make(std::vector<Waypoint> points);

    /// Two waypoints at constant velocity.
    static Trajectory linear(double t0, double r0, double t1, double r1);
    /// Triangle wave between r_low and r_high starting at r_low, for `periods` cycles.
    static Trajectory triangle(double r_low, double r_high, double period_s, std::size_t periods);

    double range_at(double t) const;
    double velocity_at(double t) const;
    double start() const noexcept { return points_.front().t; }
    double end() const noexcept { return points_.back().t; }
    const std::vector<Waypoint>& points() const noexcept { return points_; }

private:
    explicit Trajectory(std::vector<Waypoint> p) : points_(std::move(p)) {}
    std::size_t segment(double t) const;

    std::vector<Waypoint> points_;
};

}  // namespace csirad
