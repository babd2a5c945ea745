#pragma once

#include "csirad/rdmap.hpp"
#include "csirad/trajectory.hpp"

#include <vector>

namespace csirad {

struct ErrorStats {
    std::size_t count = 0;
    double median = 0.0;
    double mean = 0.0;
    double p90 = 0.0;
};

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);
ErrorStats summarize(const std::vector<double>& abs_errors);

struct EvalReport {
    ErrorStats range;
    ErrorStats velocity;
    std::size_t skipped_slow = 0;  ///< detections with |v_true| below the speed gate
};

/// Absolute range/velocity errors against the interpolated truth, over
/// detections where |v_true| >= min_speed. Throws std::invalid_argument when
/// nothing is left to score.
EvalReport evaluate(const std::vector<Detection>& detections, const Trajectory& truth, double min_speed = 0.0);

}  // namespace csirad
