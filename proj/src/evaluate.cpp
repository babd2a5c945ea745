#include "csirad/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csirad {

double percentile(std::vector<double> values, double q) {
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ErrorStats summarize(const std::vector<double>& e) {
    ErrorStats s;
    s.count = e.size();
    if (e.empty())
        return s;
    s.median = percentile(e, 50.0);
    s.mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
    s.p90 = percentile(e, 90.0);
    return s;
}

EvalReport evaluate(const std::vector<Detection>& detections, const Trajectory& truth, double min_speed) {
    if (detections.empty())
        throw std::invalid_argument("nothing to evaluate");
    std::vector<double> range_err;
    std::vector<double> vel_err;
    EvalReport rep;
    for (const auto& d : detections) {
        const double v = truth.velocity_at(d.t);
        if (std::abs(v) < min_speed) {
            ++rep.skipped_slow;
            continue;
        }
        range_err.push_back(std::abs(d.range_m - truth.range_at(d.t)));
        vel_err.push_back(std::abs(d.velocity_mps - v));
    }
    if (range_err.empty())
        throw std::invalid_argument("nothing to evaluate above the speed gate");
    rep.range = summarize(range_err);
    rep.velocity = summarize(vel_err);
    return rep;
}

}  // namespace csirad
