#include "csirad/waveform.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace csirad {
namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("waveform: ") + name + " must be positive");
}

}  // namespace

WaveformConfig WaveformConfig::make(const WaveformParams& p) {
    if (p.n_subcarriers < 2)
        throw std::invalid_argument("waveform: need at least 2 subcarriers");
    if (p.n_frames < 2)
        throw std::invalid_argument("waveform: need at least 2 frames");
    if (!p.subcarrier_spacing_hz && !p.bandwidth_hz)
        throw std::invalid_argument("waveform: subcarrier spacing or bandwidth required");
    require_positive(p.frame_interval_s, "frame interval");
    require_positive(p.carrier_freq_hz, "carrier frequency");
    require_positive(p.wave_speed_mps, "wave speed");

    const auto n = static_cast<double>(p.n_subcarriers);
    double spacing = 0.0;
    double bandwidth = 0.0;
    if (p.subcarrier_spacing_hz) {
        spacing = *p.subcarrier_spacing_hz;
        require_positive(spacing, "subcarrier spacing");
        bandwidth = n * spacing;
        if (p.bandwidth_hz) {
            require_positive(*p.bandwidth_hz, "bandwidth");
            if (std::abs(*p.bandwidth_hz - bandwidth) > 1e-9 * bandwidth)
                throw std::invalid_argument("waveform: inconsistent bandwidth (B != N * subcarrier spacing)");
            bandwidth = *p.bandwidth_hz;
        }
    } else {
        bandwidth = *p.bandwidth_hz;
        require_positive(bandwidth, "bandwidth");
        spacing = bandwidth / n;
    }

    WaveformConfig cfg;
    cfg.n_ = p.n_subcarriers;
    cfg.m_ = p.n_frames;
    cfg.spacing_ = spacing;
    cfg.bandwidth_ = bandwidth;
    cfg.interval_ = p.frame_interval_s;
    cfg.carrier_ = p.carrier_freq_hz;
    cfg.c_ = p.wave_speed_mps;
    return cfg;
}

WaveformConfig WaveformConfig::wifi_ax211() {
    WaveformParams p;
    p.n_subcarriers = 512;
    p.n_frames = 32;
    p.subcarrier_spacing_hz = 312.5e3;
    p.frame_interval_s = 0.025;
    p.carrier_freq_hz = 6.3e9;
    return make(p);
}

WaveformConfig WaveformConfig::with_frames(std::size_t n_frames) const {
    auto p = params();
    p.n_frames = n_frames;
    return make(p);
}

WaveformParams WaveformConfig::params() const {
    WaveformParams p;
    p.n_subcarriers = n_;
    p.n_frames = m_;
    p.subcarrier_spacing_hz = spacing_;
    p.frame_interval_s = interval_;
    p.carrier_freq_hz = carrier_;
    p.wave_speed_mps = c_;
    return p;
}

SymbolGrid SymbolGrid::from_sequence(std::span<const cplx> sequence, std::size_t n_frames) {
    if (sequence.empty() || n_frames == 0)
        throw std::invalid_argument("SymbolGrid: empty sequence or zero frames");
    for (const auto& s : sequence)
        if (std::abs(s) < 1e-12)
            throw std::invalid_argument("SymbolGrid: zero-valued training symbol");
    ComplexGrid g(n_frames, sequence.size());
    for (std::size_t m = 0; m < n_frames; ++m)
        std::copy(sequence.begin(), sequence.end(), g.row(m).begin());
    return SymbolGrid(std::move(g));
}

SymbolGrid SymbolGrid::with_frames(std::size_t n_frames) const {
    return from_sequence(sequence(), n_frames);
}

SymbolGrid generate_ltf_symbols(const WaveformConfig& cfg, std::uint64_t seed) {
    // QPSK points e^{j(π/4 + kπ/2)}; 2-bit draws from a fixed-algorithm engine.
    std::mt19937_64 rng(seed);
    std::vector<cplx> seq(cfg.n_subcarriers());
    for (auto& s : seq) {
        const auto k = static_cast<double>(rng() >> 62);
        s = std::polar(1.0, std::numbers::pi / 4.0 + k * std::numbers::pi / 2.0);
    }
    return SymbolGrid::from_sequence(seq, cfg.n_frames());
}

namespace formula {

double range_resolution(double c, double bandwidth) { return c / (2.0 * bandwidth); }

double velocity_resolution(double c, std::size_t n_frames, double carrier, double interval) {
    return c / (2.0 * static_cast<double>(n_frames) * carrier * interval);
}

double max_range(double c, std::size_t n_subcarriers, double bandwidth) {
    return c * static_cast<double>(n_subcarriers) / (2.0 * bandwidth);
}

double max_velocity(double c, double carrier, double interval) { return c / (2.0 * carrier * interval); }

double range_accuracy(double range_resolution, double snr_linear) {
    if (!(snr_linear > 0.0))
        throw std::invalid_argument("range_accuracy: SNR must be positive");
    return range_resolution / std::sqrt(2.0 * snr_linear);
}

}  // namespace formula

double range_resolution(const WaveformConfig& cfg) {
    return formula::range_resolution(cfg.wave_speed(), cfg.bandwidth());
}

double doppler_resolution(const WaveformConfig& cfg) {
    return formula::velocity_resolution(cfg.wave_speed(), cfg.n_frames(), cfg.carrier_freq(), cfg.frame_interval());
}

UnambiguousLimits unambiguous_limits(const WaveformConfig& cfg) {
    return {formula::max_range(cfg.wave_speed(), cfg.n_subcarriers(), cfg.bandwidth()),
            formula::max_velocity(cfg.wave_speed(), cfg.carrier_freq(), cfg.frame_interval())};
}

double range_accuracy(const WaveformConfig& cfg, double snr_linear) {
    return formula::range_accuracy(range_resolution(cfg), snr_linear);
}

ResolutionReport resolution_report(const WaveformConfig& cfg, std::optional<double> snr_linear) {
    const auto lim = unambiguous_limits(cfg);
    ResolutionReport r{range_resolution(cfg), doppler_resolution(cfg), lim.max_range, lim.max_velocity, {}};
    if (snr_linear)
        r.range_accuracy = range_accuracy(cfg, *snr_linear);
    return r;
}

}  // namespace csirad
