#pragma once

#include "csirad/rdmap.hpp"
#include "csirad/track.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace csirad {

/// Magnitude CSV: header row of range bin centres, one row per Doppler bin
/// led by its velocity.
void write_map_csv(std::ostream& out, const RangeDopplerMap& map);
/// Binary 8-bit PGM of log-magnitude normalized to the map's own range.
/// Highest Doppler bin on the top row.
void write_map_pgm(std::ostream& out, const RangeDopplerMap& map, double dynamic_range_db = 100.0);

/// One JSON object per line: t, range_m, velocity_mps, power_db, bin_l, bin_p.
std::string detection_json(const Detection& d);
void write_detections(std::ostream& out, const std::vector<std::optional<Detection>>& detections);
std::vector<Detection> read_detections(std::istream& in);

/// Energy CSV: header row of window times, one row per Doppler bin led by its velocity.
void write_profile_csv(std::ostream& out, const DopplerTimeProfile& profile);

}  // namespace csirad
