#pragma once

#include "csirad/channel_sim.hpp"
#include "csirad/waveform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csirad {

inline constexpr std::uint64_t kDefaultLtfSeed = 0x4C5446;  // "LTF"

/// Parsed scene description. Text format: one `key = value` per line, `#`
/// starts a comment, list values are comma-separated, repeatable keys append.
///
///   preset = wifi-ax211                # waveform defaults
///   n_subcarriers / subcarrier_spacing_hz / bandwidth_hz / window_frames
///   frame_interval_s / carrier_freq_hz / wave_speed_mps
///   frames = 156                       # capture length
///   ltf_seed = 4998214
///   snr_db = 20 | noiseless
///   coupling_db = 30                   # above strongest non-coupling return
///   coupling_phase_rad = 0
///   target = range_m, velocity_mps, gain_db[, phase_rad]
///   clutter = range_m, gain_db[, phase_rad]
///   waypoint = t_s, range_m            # piecewise-linear mover
///   triangle = r_low, r_high, period_s, periods
///   mover_gain_db = 0
///   delay_offset_samples / phase_jump_step_rad / phase_jump_prob / phase_drift_std_rad
struct Scenario {
    WaveformParams waveform;
    std::size_t frame_count = 0;
    std::uint64_t ltf_seed = kDefaultLtfSeed;
    Scene scene;
    std::optional<MovingTarget> mover;

    WaveformConfig config() const { return WaveformConfig::make(waveform); }
};

/// Throws FormatError on unknown keys or malformed values.
Scenario parse_scenario(std::string_view text);

/// Built-in scenario text ("test1", "gesture"), or empty for unknown names.
std::optional<std::string> builtin_scenario(std::string_view name);

/// Built-in name or path to a scenario file.
Scenario load_scenario(const std::string& name_or_path);

struct SimulatedCapture {
    WaveformConfig config;
    SymbolGrid symbols;
    CsiGrid received;
    std::vector<TruthRow> truth;
};

/// Runs the simulator with impairment/noise seed `seed`.
SimulatedCapture simulate_scenario(const Scenario& scenario, std::uint64_t seed);

}  // namespace csirad
