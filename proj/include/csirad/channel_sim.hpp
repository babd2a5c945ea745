#pragma once

#include "csirad/grid.hpp"
#include "csirad/trajectory.hpp"
#include "csirad/waveform.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace csirad {

/// Point reflector. Positive velocity means increasing range.
struct Target {
    double range_m = 0.0;
    double velocity_mps = 0.0;
    cplx gain{1.0, 0.0};

    double delay(const WaveformConfig& cfg) const { return 2.0 * range_m / cfg.wave_speed(); }
    double doppler(const WaveformConfig& cfg) const {
        return 2.0 * velocity_mps * cfg.carrier_freq() / cfg.wave_speed();
    }
};

/// Synthetic NIC impairments. The per-frame phase error is
/// phi_m = (sum of jumps up to m) + N(0, drift_std^2), each jump being
/// k * phase_jump_step with k uniform in {-2, -1, 1, 2}.
struct Impairments {
    double delay_offset_samples = 0.0;
    double phase_jump_step = 0.0;
    double phase_jump_prob = 0.0;
    double phase_drift_std = 0.0;
    std::uint64_t rng_seed = 0;

    bool any() const noexcept {
        return delay_offset_samples != 0.0 || phase_jump_prob > 0.0 || phase_drift_std > 0.0;
    }
};

struct Scene {
    std::vector<Target> targets;
    std::optional<Target> coupling;  ///< Tx/Rx leakage at r = 0, v = 0
    std::vector<Target> clutter;     ///< static reflectors
    std::optional<double> snr_db;    ///< empty means noiseless
    Impairments impairments;

    /// Coupling of `db_above` dB relative to the strongest non-coupling return.
    void add_coupling_db(double db_above, double phase_rad = 0.0);
};

/// Throws std::invalid_argument when a reflector lies outside the unambiguous
/// limits or the coupling is not the strongest return.
void validate_scene(const WaveformConfig& cfg, const Scene& scene);

/// Power |a|^2 of the strongest non-coupling reflector (coupling if it is alone, else 1).
double reference_power(const Scene& scene);

/// Received symbol grid for cfg.n_frames() frames with constant-velocity targets.
CsiGrid simulate_capture(const WaveformConfig& cfg, const Scene& scene, const SymbolGrid& symbols);

/// D(m, n) = received(m, n) / S(m, n).
CsiGrid csi_divide(const CsiGrid& received, const SymbolGrid& symbols);

struct MovingTarget {
    Trajectory path;
    cplx gain{1.0, 0.0};
};

/// Long capture of `frame_count` frames. The mover's range is interpolated per
/// frame and its slow-time phase follows the range displacement. `extras`
/// supplies coupling, clutter, additional constant-velocity targets, noise
/// and impairments. `symbols` provides the LTF sequence (row 0 is used).
CsiGrid simulate_trajectory(const WaveformConfig& cfg, const MovingTarget& mover, std::size_t frame_count,
                            const Scene& extras, const SymbolGrid& symbols);

/// Per-frame phase error phi_m used by the impairment model.
std::vector<double> impairment_phases(const Impairments& imp, std::size_t frame_count);

struct TruthRow {
    double t;
    double range_m;
    double velocity_mps;
};

std::vector<TruthRow> truth_rows(const Trajectory& path, std::size_t frame_count, double frame_interval);

/// Brute-force magnitude spectrum evaluated directly from the scene: builds the
/// channel sum by explicit exponentials and performs the 2-D DFT by nested
/// summation at the requested bins. Noiseless, impairment-free scenes only.
struct OracleSpectrum {
    std::vector<int> range_bins;
    std::vector<int> doppler_bins;
    std::vector<double> magnitude;  ///< doppler-major: magnitude[i * range_bins.size() + j]

    double at(std::size_t doppler_idx, std::size_t range_idx) const {
        return magnitude[doppler_idx * range_bins.size() + range_idx];
    }
    /// (doppler bin, range bin) of the largest value.
    std::pair<int, int> argmax() const;
    /// Bins that dominate their 8 neighbours within the evaluated set.
    std::vector<std::pair<int, int>> local_maxima(double min_fraction_of_max = 0.1) const;
};

OracleSpectrum oracle_spectrum(const WaveformConfig& cfg, const Scene& scene, std::vector<int> range_bins,
                               std::vector<int> doppler_bins);

/// All bins: range 0..N-1, Doppler -M/2..M/2-1.
OracleSpectrum oracle_spectrum(const WaveformConfig& cfg, const Scene& scene);

namespace detail {
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
}

}  // namespace csirad
