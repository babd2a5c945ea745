#include "csirad/track.hpp"

#include "csirad/channel_sim.hpp"
#include "csirad/sic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csirad {

PreparedCapture prepare_capture(const CsiGrid& received, const SymbolGrid& symbols, const TrackOptions& opts) {
    if (symbols.cols() != received.cols())
        throw std::invalid_argument("prepare_capture: symbol length does not match capture");
    const auto full_symbols = symbols.rows() == received.rows() ? symbols : symbols.with_frames(received.rows());
    auto csi = csi_divide(received, full_symbols);
    if (!opts.sync)
        return {std::move(csi), {}};
    auto aligned = synchronize(csi, full_symbols, received, opts.sync_params);
    return {std::move(aligned.grid), std::move(aligned.report)};
}

std::size_t window_count(std::size_t frames, std::size_t window, std::size_t stride) {
    if (window < 2)
        throw std::invalid_argument("window must span at least 2 frames");
    if (stride < 1)
        throw std::invalid_argument("stride must be >= 1");
    if (frames < window)
        throw std::invalid_argument("capture shorter than one window");
    return (frames - window) / stride + 1;
}

double window_centre(std::size_t first_frame, std::size_t window, double frame_interval) {
    return (static_cast<double>(first_frame) + 0.5 * static_cast<double>(window - 1)) * frame_interval;
}

RangeDopplerMap window_map(const CsiGrid& csi, std::size_t first, const WaveformConfig& cfg,
                           const TrackOptions& opts) {
    auto block = csi.slice_rows(first, opts.window);
    if (opts.sic)
        block = remove_dc(block);
    auto map = range_doppler(block, cfg, opts.map);
    map.time_s = window_centre(first, opts.window, cfg.frame_interval());
    return map;
}

namespace {

// Magnitude a full-scale coherent return would reach in this window, from the
// pre-SIC energy; used to reject numerical residue after cancellation.
double residue_floor(const CsiGrid& csi, std::size_t first, std::size_t window, const TrackOptions& opts) {
    double e = 0.0;
    for (std::size_t m = first; m < first + window; ++m)
        for (const auto& v : csi.row(m))
            e += std::norm(v);
    const double full_scale = std::sqrt(e * static_cast<double>(window * csi.cols()));
    return full_scale * std::pow(10.0, -opts.dynamic_range_db / 20.0);
}

std::optional<Detection> strongest(const RangeDopplerMap& map, DetectOptions det, double floor) {
    det.min_magnitude = std::max(det.min_magnitude, floor);
    det.max_targets = std::max<std::size_t>(det.max_targets, 1);
    auto found = detect(map, det);
    if (found.empty())
        return std::nullopt;
    return found.front();
}

}  // namespace

TrackResult track(const CsiGrid& received, const SymbolGrid& symbols, const WaveformConfig& cfg,
                  const TrackOptions& opts) {
    const std::size_t count = window_count(received.rows(), opts.window, opts.stride);
    auto prepared = prepare_capture(received, symbols, opts);

    TrackResult out;
    out.sync = std::move(prepared.report);
    out.detections.resize(count);
    out.window_times.resize(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t wi = 0; wi < static_cast<std::ptrdiff_t>(count); ++wi) {
        const auto w = static_cast<std::size_t>(wi);
        const std::size_t first = w * opts.stride;
        const auto map = window_map(prepared.csi, first, cfg, opts);
        out.window_times[w] = map.time_s;
        out.detections[w] = strongest(map, opts.detect, residue_floor(prepared.csi, first, opts.window, opts));
    }
    return out;
}

int DopplerTimeProfile::dominant_doppler(std::size_t w) const {
    std::size_t best = 0;
    for (std::size_t r = 1; r < doppler_bins; ++r)
        if (at(r, w) > at(best, w))
            best = r;
    return doppler_of_row(best);
}

DopplerTimeProfile doppler_time_profile(const CsiGrid& received, const SymbolGrid& symbols,
                                        const WaveformConfig& cfg, const TrackOptions& opts) {
    const std::size_t count = window_count(received.rows(), opts.window, opts.stride);
    const auto prepared = prepare_capture(received, symbols, opts);

    DopplerTimeProfile prof;
    prof.windows = count;
    prof.stride = opts.stride;
    prof.doppler_bins = opts.window * opts.map.pad;
    prof.energy.assign(prof.doppler_bins * count, 0.0);
    prof.times.resize(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t wi = 0; wi < static_cast<std::ptrdiff_t>(count); ++wi) {
        const auto w = static_cast<std::size_t>(wi);
        const auto map = window_map(prepared.csi, w * opts.stride, cfg, opts);
        prof.times[w] = map.time_s;
        if (w == 0)
            prof.velocity_scale = map.velocity_scale;
        for (std::size_t r = 0; r < map.doppler_bins(); ++r) {
            double e = 0.0;
            for (const auto& v : map.values.row(r))
                e += std::norm(v);
            prof.energy[r * count + w] = e;
        }
    }
    return prof;
}

}  // namespace csirad
