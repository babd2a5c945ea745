#pragma once

#include "csirad/grid.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

namespace csirad {

inline constexpr double kSpeedOfLight = 2.998e8;

/// Raw inputs to WaveformConfig::make. Supply subcarrier spacing, bandwidth,
/// or both (then they must agree with B = N * spacing).
struct WaveformParams {
    std::size_t n_subcarriers = 0;
    std::size_t n_frames = 0;
    std::optional<double> subcarrier_spacing_hz;
    std::optional<double> bandwidth_hz;
    double frame_interval_s = 0.0;
    double carrier_freq_hz = 0.0;
    double wave_speed_mps = kSpeedOfLight;
};

/// Validated OFDM sensing parameters. Immutable once built.
class WaveformConfig {
public:
    static WaveformConfig make(const WaveformParams& params);

    /// 160 MHz / 6.3 GHz / 512 subcarriers / 32 frames at 25 ms.
    static WaveformConfig wifi_ax211();

    std::size_t n_subcarriers() const noexcept { return n_; }
    std::size_t n_frames() const noexcept { return m_; }
    double subcarrier_spacing() const noexcept { return spacing_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double frame_interval() const noexcept { return interval_; }
    double carrier_freq() const noexcept { return carrier_; }
    double wave_speed() const noexcept { return c_; }

    /// Same waveform with a different slow-time window length.
    WaveformConfig with_frames(std::size_t n_frames) const;

    WaveformParams params() const;

private:
    WaveformConfig() = default;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    double spacing_ = 0.0;
    double bandwidth_ = 0.0;
    double interval_ = 0.0;
    double carrier_ = 0.0;
    double c_ = kSpeedOfLight;
};

/// Known LTF symbol grid S(m, n). Every frame repeats the same sequence.
class SymbolGrid {
public:
    /// Repeats `sequence` over `n_frames` rows. Entries must be non-zero.
    static SymbolGrid from_sequence(std::span<const cplx> sequence, std::size_t n_frames);

    const ComplexGrid& values() const noexcept { return grid_; }
    std::size_t rows() const noexcept { return grid_.rows(); }
    std::size_t cols() const noexcept { return grid_.cols(); }
    const cplx& operator()(std::size_t m, std::size_t n) const noexcept { return grid_(m, n); }
    std::span<const cplx> sequence() const noexcept { return grid_.row(0); }

    /// Same sequence, different frame count.
    SymbolGrid with_frames(std::size_t n_frames) const;

private:
    explicit SymbolGrid(ComplexGrid g) : grid_(std::move(g)) {}
    ComplexGrid grid_;
};

/// Seeded unit-modulus QPSK LTF. Pure function of (n_subcarriers, n_frames, seed).
SymbolGrid generate_ltf_symbols(const WaveformConfig& cfg, std::uint64_t seed);

struct ResolutionReport {
    double range_resolution;
    double velocity_resolution;
    double max_range;
    double max_velocity;  ///< full span; the shifted Doppler axis covers ±max_velocity/2
    std::optional<double> range_accuracy;
};

struct UnambiguousLimits {
    double max_range;
    double max_velocity;
    double velocity_half_span() const noexcept { return max_velocity / 2.0; }
};

double range_resolution(const WaveformConfig& cfg);
double doppler_resolution(const WaveformConfig& cfg);
UnambiguousLimits unambiguous_limits(const WaveformConfig& cfg);
/// Range error for a linear SNR; meaningful for snr >> 1.
double range_accuracy(const WaveformConfig& cfg, double snr_linear);
ResolutionReport resolution_report(const WaveformConfig& cfg, std::optional<double> snr_linear = {});

/// The same closed forms on raw quantities, without config validation.
namespace formula {
double range_resolution(double wave_speed, double bandwidth);
double velocity_resolution(double wave_speed, std::size_t n_frames, double carrier, double interval);
double max_range(double wave_speed, std::size_t n_subcarriers, double bandwidth);
double max_velocity(double wave_speed, double carrier, double interval);
double range_accuracy(double range_resolution, double snr_linear);
}  // namespace formula

inline double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace csirad
