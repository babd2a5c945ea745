#include "csirad/rdmap.hpp"

#include "csirad/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csirad {

WindowKind parse_window(const std::string& name) {
    if (name == "hann")
        return WindowKind::hann;
    if (name == "rect")
        return WindowKind::rect;
    throw std::invalid_argument("unknown window '" + name + "' (expected hann or rect)");
}

std::vector<double> window_coefficients(WindowKind kind, std::size_t length) {
    std::vector<double> w(length, 1.0);
    if (kind == WindowKind::hann) {
        for (std::size_t i = 0; i < length; ++i)
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(length));
    }
    return w;
}

std::vector<double> RangeDopplerMap::magnitudes() const {
    std::vector<double> out(values.size());
    std::transform(values.values().begin(), values.values().end(), out.begin(),
                   [](const cplx& v) { return std::abs(v); });
    return out;
}

RangeDopplerMap range_doppler(const CsiGrid& csi, const WaveformConfig& cfg, const MapOptions& opts) {
    const std::size_t M = csi.rows();
    const std::size_t N = csi.cols();
    if (M < 2 || N < 2)
        throw std::invalid_argument("range_doppler: grid must be at least 2x2");
    if (opts.pad < 1)
        throw std::invalid_argument("range_doppler: padding factor must be >= 1");
    const std::size_t Mp = M * opts.pad;
    const std::size_t Np = N * opts.pad;
    const auto wn = window_coefficients(opts.range_window, N);
    const auto wm = window_coefficients(opts.doppler_window, M);

    // Fast time: one inverse transform per frame.
    ComplexGrid delay(M, Np);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(M); ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        auto row = delay.row(m);
        const auto in = csi.row(m);
        for (std::size_t n = 0; n < N; ++n)
            row[n] = in[n] * wn[n];
        fft::backward(row);
    }

    // Slow time: one forward transform per range bin, written centre-shifted.
    RangeDopplerMap map;
    map.values = ComplexGrid(Mp, Np);
    const std::size_t half = Mp / 2;
#pragma omp parallel
    {
        std::vector<cplx> col(Mp);
#pragma omp for schedule(static)
        for (std::ptrdiff_t li = 0; li < static_cast<std::ptrdiff_t>(Np); ++li) {
            const auto l = static_cast<std::size_t>(li);
            std::fill(col.begin(), col.end(), cplx{});
            for (std::size_t m = 0; m < M; ++m)
                col[m] = delay(m, l) * wm[m];
            fft::forward(col);
            for (std::size_t k = 0; k < Mp; ++k)
                map.values((k + half) % Mp, l) = col[k];
        }
    }
    map.range_scale = range_resolution(cfg) / static_cast<double>(opts.pad);
    map.velocity_scale = cfg.wave_speed() /
                         (2.0 * cfg.carrier_freq() * static_cast<double>(M) * cfg.frame_interval()) /
                         static_cast<double>(opts.pad);
    return map;
}

namespace {

// Vertex of the parabola through (-1, a), (0, b), (1, c) in log-magnitude.
double parabolic_offset(double left, double centre, double right) {
    constexpr double tiny = 1e-300;
    const double a = std::log(std::max(left, tiny));
    const double b = std::log(std::max(centre, tiny));
    const double c = std::log(std::max(right, tiny));
    const double denom = a - 2.0 * b + c;
    if (!(denom < 0.0))
        return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

}  // namespace

PeakEstimate estimate_peak(const RangeDopplerMap& map, std::size_t row, std::size_t col) {
    const std::size_t rows = map.doppler_bins();
    const std::size_t cols = map.range_bins();
    if (row >= rows || col >= cols)
        throw std::out_of_range("estimate_peak: cell outside map");

    const double centre = map.magnitude(row, col);
    const double left = map.magnitude(row, (col + cols - 1) % cols);
    const double right = map.magnitude(row, (col + 1) % cols);
    const bool has_down = row > 0;
    const bool has_up = row + 1 < rows;
    const double down = has_down ? map.magnitude(row - 1, col) : 0.0;
    const double up = has_up ? map.magnitude(row + 1, col) : 0.0;
    if (left > centre || right > centre || down > centre || up > centre)
        throw std::invalid_argument("estimate_peak: cell is not a local maximum");

    PeakEstimate est;
    est.offset_l = parabolic_offset(left, centre, right);
    est.offset_p = (has_down && has_up) ? parabolic_offset(down, centre, up) : 0.0;

    // Delays are non-negative; a refinement below bin 0 clamps to zero range.
    const double range_pos = std::max(0.0, static_cast<double>(col) + est.offset_l);
    est.range_m = range_pos * map.range_scale;
    est.velocity_mps = (map.doppler_of_row(row) + est.offset_p) * map.velocity_scale;
    est.power_db = 20.0 * std::log10(std::max(centre, 1e-300));
    return est;
}

double median(std::vector<double> values) {
    if (values.empty())
        return 0.0;
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1)
        return hi;
    const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

std::vector<Detection> detect(const RangeDopplerMap& map, const DetectOptions& opts) {
    const std::size_t rows = map.doppler_bins();
    const std::size_t cols = map.range_bins();
    const auto mags = map.magnitudes();
    const double floor = median(mags);
    const double strongest = mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
    const double threshold = std::max({floor * std::pow(10.0, opts.threshold_db / 20.0), opts.min_magnitude,
                                       strongest * std::pow(10.0, -opts.dynamic_range_db / 20.0)});

    auto at = [&](std::size_t r, std::size_t c) { return mags[r * cols + c]; };
    struct Candidate {
        double mag;
        std::size_t row;
        std::size_t col;
    };
    std::vector<Candidate> cands;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = at(r, c);
            if (!(v >= threshold) || v <= 0.0)
                continue;
            bool is_max = true;
            for (int dr = -1; dr <= 1 && is_max; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0)
                        continue;
                    const std::size_t rr = (r + rows + static_cast<std::size_t>(dr + 1) - 1) % rows;
                    const std::size_t cc = (c + cols + static_cast<std::size_t>(dc + 1) - 1) % cols;
                    if (at(rr, cc) > v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                cands.push_back({v, r, c});
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.mag > b.mag; });

    std::vector<Detection> out;
    std::vector<bool> suppressed(rows * cols, false);
    for (const auto& cd : cands) {
        if (out.size() >= opts.max_targets)
            break;
        if (suppressed[cd.row * cols + cd.col])
            continue;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                const std::size_t rr = (cd.row + rows + static_cast<std::size_t>(dr + 1) - 1) % rows;
                const std::size_t cc = (cd.col + cols + static_cast<std::size_t>(dc + 1) - 1) % cols;
                suppressed[rr * cols + cc] = true;
            }
        const auto pk = estimate_peak(map, cd.row, cd.col);
        Detection d;
        d.t = map.time_s;
        d.range_m = pk.range_m;
        d.velocity_mps = pk.velocity_mps;
        d.power_db = pk.power_db;
        d.bin_l = static_cast<int>(cd.col);
        d.bin_p = map.doppler_of_row(cd.row);
        d.offset_l = pk.offset_l;
        d.offset_p = pk.offset_p;
        out.push_back(d);
    }
    return out;
}

}  // namespace csirad
