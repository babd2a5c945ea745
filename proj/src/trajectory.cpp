#include "csirad/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace csirad {

Trajectory Trajectory::make(std::vector<Waypoint> points) {
    if (points.empty())
        throw std::invalid_argument("trajectory: no waypoints");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].t > points[i - 1].t))
            throw std::invalid_argument("trajectory: timestamps must be strictly increasing");
    return Trajectory(std::move(points));
}

Trajectory Trajectory::linear(double t0, double r0, double t1, double r1) {
    return make({{t0, r0, {}}, {t1, r1, {}}});
}

Trajectory Trajectory::triangle(double r_low, double r_high, double period_s, std::size_t periods) {
    std::vector<Waypoint> pts;
    for (std::size_t k = 0; k <= 2 * periods; ++k)
        pts.push_back({0.5 * period_s * static_cast<double>(k), k % 2 == 0 ? r_low : r_high, {}});
    return make(std::move(pts));
}

// Index i of the segment [i, i+1] that contains t; right-continuous at waypoints.
std::size_t Trajectory::segment(double t) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const Waypoint& w) { return v < w.t; });
    auto idx = static_cast<std::size_t>(it - points_.begin());
    if (idx == 0)
        return 0;
    return std::min(idx - 1, points_.size() - 2);
}

double Trajectory::range_at(double t) const {
    if (points_.size() == 1 || t <= start())
        return points_.front().range_m;
    if (t >= end())
        return points_.back().range_m;
    const auto i = segment(t);
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    const double u = (t - a.t) / (b.t - a.t);
    return a.range_m + u * (b.range_m - a.range_m);
}

double Trajectory::velocity_at(double t) const {
    if (points_.size() == 1)
        return points_.front().velocity_mps.value_or(0.0);
    const auto i = segment(t);
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    if (a.velocity_mps && b.velocity_mps) {
        const double u = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
        return *a.velocity_mps + u * (*b.velocity_mps - *a.velocity_mps);
    }
    return (b.range_m - a.range_m) / (b.t - a.t);
}

}  // namespace csirad
