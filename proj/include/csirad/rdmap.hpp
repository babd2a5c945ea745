#pragma once

#include "csirad/grid.hpp"
#include "csirad/waveform.hpp"

#include <optional>
#include <vector>

namespace csirad {

enum class WindowKind { rect, hann };

WindowKind parse_window(const std::string& name);
/// Periodic (DFT-even) window of the given length.
std::vector<double> window_coefficients(WindowKind kind, std::size_t length);

struct MapOptions {
    WindowKind range_window = WindowKind::hann;
    WindowKind doppler_window = WindowKind::hann;
    std::size_t pad = 1;  ///< zero-padding factor applied to both axes

    static MapOptions rectangular() { return {WindowKind::rect, WindowKind::rect, 1}; }
};

/// 2-D spectrum of a CSI window. Rows are Doppler bins, centre-shifted so row
/// i holds bin p = i - rows/2; columns are range bins 0..cols-1.
struct RangeDopplerMap {
    ComplexGrid values;
    double range_scale = 0.0;     ///< metres per range bin
    double velocity_scale = 0.0;  ///< m/s per Doppler bin
    double time_s = 0.0;          ///< centre of the source window

    std::size_t doppler_bins() const noexcept { return values.rows(); }
    std::size_t range_bins() const noexcept { return values.cols(); }
    int doppler_of_row(std::size_t row) const noexcept {
        return static_cast<int>(row) - static_cast<int>(values.rows() / 2);
    }
    std::size_t row_of_doppler(int p) const noexcept {
        return static_cast<std::size_t>(p + static_cast<int>(values.rows() / 2));
    }
    double magnitude(std::size_t row, std::size_t col) const { return std::abs(values(row, col)); }
    std::vector<double> magnitudes() const;
    double energy() const noexcept { return values.energy(); }
};

/// Inverse DFT along subcarriers (delay axis, peak at l = τB) then forward DFT
/// along frames (Doppler axis, peak at p = f_D M T), Doppler axis centre-shifted.
/// Unnormalized: an on-bin unit exponential yields magnitude M*N (rectangular).
/// Axis scales come from cfg with the window length taken from csi.rows().
RangeDopplerMap range_doppler(const CsiGrid& csi, const WaveformConfig& cfg, const MapOptions& opts = {});

struct PeakEstimate {
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double power_db = 0.0;
    double offset_l = 0.0;  ///< sub-bin offset along range, within [-0.5, 0.5]
    double offset_p = 0.0;  ///< sub-bin offset along Doppler, within [-0.5, 0.5]
};

/// Parabolic interpolation of log-magnitude along each axis independently.
/// The range axis is circular; Doppler edge rows fall back to no refinement.
/// Throws std::invalid_argument when the cell is not a local maximum.
PeakEstimate estimate_peak(const RangeDopplerMap& map, std::size_t row, std::size_t col);

struct Detection {
    double t = 0.0;
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double power_db = 0.0;
    int bin_l = 0;
    int bin_p = 0;
    double offset_l = 0.0;
    double offset_p = 0.0;
};

struct DetectOptions {
    double threshold_db = 12.0;  ///< above the median magnitude
    std::size_t max_targets = 8;
    double min_magnitude = 0.0;  ///< absolute floor, below which nothing is reported
    double dynamic_range_db = 120.0;  ///< peaks further below the strongest cell are residue
};

/// Greedy peak picking: local maxima (3x3, circular) at or above the noise
/// floor plus threshold, strongest first, each suppressing its 3x3 neighbourhood.
std::vector<Detection> detect(const RangeDopplerMap& map, const DetectOptions& opts = {});

double median(std::vector<double> values);

}  // namespace csirad
