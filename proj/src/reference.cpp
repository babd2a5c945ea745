#include "csirad/channel_sim.hpp"
#include "csirad/track.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csirad::reference {

RangeDopplerMap range_doppler(const CsiGrid& csi, const WaveformConfig& cfg, const MapOptions& opts) {
    const std::size_t M = csi.rows();
    const std::size_t N = csi.cols();
    if (M < 2 || N < 2)
        throw std::invalid_argument("range_doppler: grid must be at least 2x2");
    if (opts.pad != 1)
        throw std::invalid_argument("reference range_doppler: padding not supported");
    const auto wn = window_coefficients(opts.range_window, N);
    const auto wm = window_coefficients(opts.doppler_window, M);
    const double two_pi = 2.0 * std::numbers::pi;

    ComplexGrid delay(M, N);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t l = 0; l < N; ++l) {
            cplx acc{};
            for (std::size_t n = 0; n < N; ++n)
                acc += csi(m, n) * wn[n] * std::polar(1.0, two_pi * static_cast<double>((n * l) % N) / static_cast<double>(N));
            delay(m, l) = acc;
        }

    RangeDopplerMap map;
    map.values = ComplexGrid(M, N);
    const int half = static_cast<int>(M / 2);
    for (std::size_t row = 0; row < M; ++row) {
        const int p = static_cast<int>(row) - half;
        const std::size_t k = static_cast<std::size_t>((p + static_cast<int>(M)) % static_cast<int>(M));
        for (std::size_t l = 0; l < N; ++l) {
            cplx acc{};
            for (std::size_t m = 0; m < M; ++m)
                acc += delay(m, l) * wm[m] * std::polar(1.0, -two_pi * static_cast<double>((m * k) % M) / static_cast<double>(M));
            map.values(row, l) = acc;
        }
    }
    map.range_scale = range_resolution(cfg);
    map.velocity_scale = cfg.wave_speed() / (2.0 * cfg.carrier_freq() * static_cast<double>(M) * cfg.frame_interval());
    return map;
}

CsiGrid remove_dc(const CsiGrid& csi) {
    if (csi.rows() < 2)
        throw std::invalid_argument("remove_dc: need at least 2 frames");
    CsiGrid out = csi;
    for (std::size_t n = 0; n < csi.cols(); ++n) {
        cplx mean{};
        for (std::size_t m = 0; m < csi.rows(); ++m)
            mean += csi(m, n);
        mean /= static_cast<double>(csi.rows());
        for (std::size_t m = 0; m < csi.rows(); ++m)
            out(m, n) -= mean;
    }
    return out;
}

TrackResult track(const CsiGrid& received, const SymbolGrid& symbols, const WaveformConfig& cfg,
                  const TrackOptions& opts) {
    const std::size_t count = window_count(received.rows(), opts.window, opts.stride);
    auto prepared = prepare_capture(received, symbols, opts);
    TrackResult out;
    out.sync = prepared.report;
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t first = w * opts.stride;
        auto block = prepared.csi.slice_rows(first, opts.window);
        const double e = block.energy();
        if (opts.sic)
            block = reference::remove_dc(block);
        auto map = reference::range_doppler(block, cfg, opts.map);
        map.time_s = window_centre(first, opts.window, cfg.frame_interval());
        out.window_times.push_back(map.time_s);

        auto det = opts.detect;
        det.max_targets = std::max<std::size_t>(det.max_targets, 1);
        const double full_scale = std::sqrt(e * static_cast<double>(opts.window * block.cols()));
        det.min_magnitude = std::max(det.min_magnitude, full_scale * std::pow(10.0, -opts.dynamic_range_db / 20.0));
        auto found = detect(map, det);
        out.detections.push_back(found.empty() ? std::nullopt : std::optional<Detection>(found.front()));
    }
    return out;
}

}  // namespace csirad::reference
