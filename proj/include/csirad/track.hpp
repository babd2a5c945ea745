#pragma once

#include "csirad/rdmap.hpp"
#include "csirad/sync.hpp"

#include <optional>
#include <vector>

namespace csirad {

struct TrackOptions {
    std::size_t window = 32;
    std::size_t stride = 1;
    bool sync = true;
    bool sic = true;
    SyncParams sync_params;
    MapOptions map;
    DetectOptions detect{12.0, 1, 0.0};
    /// Peaks further than this below the window's coherent full scale are
    /// treated as numerical residue, not targets.
    double dynamic_range_db = 120.0;
};

/// CSI of a full capture after division by the symbols and, when enabled,
/// delay compensation and phase alignment. The report is empty without sync.
struct PreparedCapture {
    CsiGrid csi;
    SyncReport report;
};

PreparedCapture prepare_capture(const CsiGrid& received, const SymbolGrid& symbols, const TrackOptions& opts);

std::size_t window_count(std::size_t frames, std::size_t window, std::size_t stride);
/// Centre time of the window starting at `first_frame`.
double window_centre(std::size_t first_frame, std::size_t window, double frame_interval);

/// Map of frames [first, first + window) of prepared CSI, with SIC if enabled.
RangeDopplerMap window_map(const CsiGrid& csi, std::size_t first, const WaveformConfig& cfg, const TrackOptions& opts);

struct TrackResult {
    std::vector<std::optional<Detection>> detections;  ///< one slot per window; empty = no detection
    std::vector<double> window_times;
    SyncReport sync;
};

/// Sliding-window tracker: prepare once (sequential sync), then per window
/// SIC, map, detect and keep the strongest detection. Windows run in parallel;
/// output is ordered by window index.
TrackResult track(const CsiGrid& received, const SymbolGrid& symbols, const WaveformConfig& cfg,
                  const TrackOptions& opts);

/// Doppler energy (summed over range bins) per sliding window.
struct DopplerTimeProfile {
    std::size_t doppler_bins = 0;
    std::size_t windows = 0;
    std::size_t stride = 1;
    double velocity_scale = 0.0;
    std::vector<double> energy;  ///< energy[p_row * windows + w]
    std::vector<double> times;

    double at(std::size_t row, std::size_t w) const { return energy[row * windows + w]; }
    int doppler_of_row(std::size_t row) const noexcept {
        return static_cast<int>(row) - static_cast<int>(doppler_bins / 2);
    }
    /// Doppler bin with most energy in window w.
    int dominant_doppler(std::size_t w) const;
};

DopplerTimeProfile doppler_time_profile(const CsiGrid& received, const SymbolGrid& symbols,
                                        const WaveformConfig& cfg, const TrackOptions& opts);

/// Single-threaded, transform-free implementations kept to check the parallel kernels.
namespace reference {

/// Separable direct DFT, same conventions as csirad::range_doppler (pad must be 1).
RangeDopplerMap range_doppler(const CsiGrid& csi, const WaveformConfig& cfg, const MapOptions& opts = {});
CsiGrid remove_dc(const CsiGrid& csi);
/// Serial window loop on top of the reference map.
TrackResult track(const CsiGrid& received, const SymbolGrid& symbols, const WaveformConfig& cfg,
                  const TrackOptions& opts);

}  // namespace reference

}  // namespace csirad
