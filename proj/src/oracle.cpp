#include "csirad/channel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csirad {

OracleSpectrum oracle_spectrum(const WaveformConfig& cfg, const Scene& scene, std::vector<int> range_bins,
                               std::vector<int> doppler_bins) {
    if (scene.snr_db || scene.impairments.any())
        throw std::invalid_argument("oracle_spectrum: scene must be noiseless and impairment-free");

    const std::size_t M = cfg.n_frames();
    const std::size_t N = cfg.n_subcarriers();
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<Target> all = scene.targets;
    all.insert(all.end(), scene.clutter.begin(), scene.clutter.end());
    if (scene.coupling)
        all.push_back(*scene.coupling);

    // D(m, n) = sum_k a_k e^{j2π T f_D m} e^{-j2π n Δf τ_k}
    std::vector<cplx> channel(M * N);
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t n = 0; n < N; ++n) {
            cplx acc{};
            for (const auto& t : all) {
                const double slow = two_pi * cfg.frame_interval() * t.doppler(cfg) * static_cast<double>(m);
                const double fast = -two_pi * static_cast<double>(n) * cfg.subcarrier_spacing() * t.delay(cfg);
                acc += t.gain * std::exp(cplx(0.0, slow)) * std::exp(cplx(0.0, fast));
            }
            channel[m * N + n] = acc;
        }
    }

    OracleSpectrum out;
    out.range_bins = std::move(range_bins);
    out.doppler_bins = std::move(doppler_bins);
    out.magnitude.reserve(out.range_bins.size() * out.doppler_bins.size());
    for (int p : out.doppler_bins) {
        for (int l : out.range_bins) {
            cplx acc{};
            for (std::size_t m = 0; m < M; ++m) {
                const double wm = -two_pi * p * static_cast<double>(m) / static_cast<double>(M);
                for (std::size_t n = 0; n < N; ++n) {
                    const double wn = two_pi * l * static_cast<double>(n) / static_cast<double>(N);
                    acc += channel[m * N + n] * std::exp(cplx(0.0, wm + wn));
                }
            }
            out.magnitude.push_back(std::abs(acc));
        }
    }
    return out;
}

OracleSpectrum oracle_spectrum(const WaveformConfig& cfg, const Scene& scene) {
    std::vector<int> range(cfg.n_subcarriers());
    for (std::size_t l = 0; l < range.size(); ++l)
        range[l] = static_cast<int>(l);
    const int half = static_cast<int>(cfg.n_frames() / 2);
    std::vector<int> doppler;
    for (int p = -half; p < static_cast<int>(cfg.n_frames()) - half; ++p)
        doppler.push_back(p);
    return oracle_spectrum(cfg, scene, std::move(range), std::move(doppler));
}

std::pair<int, int> OracleSpectrum::argmax() const {
    const auto it = std::max_element(magnitude.begin(), magnitude.end());
    const auto idx = static_cast<std::size_t>(it - magnitude.begin());
    return {doppler_bins[idx / range_bins.size()], range_bins[idx % range_bins.size()]};
}

std::vector<std::pair<int, int>> OracleSpectrum::local_maxima(double min_fraction_of_max) const {
    const double peak = *std::max_element(magnitude.begin(), magnitude.end());
    const auto R = static_cast<long>(range_bins.size());
    const auto D = static_cast<long>(doppler_bins.size());
    std::vector<std::pair<int, int>> out;
    for (long i = 0; i < D; ++i) {
        for (long j = 0; j < R; ++j) {
            const double v = magnitude[static_cast<std::size_t>(i * R + j)];
            if (v < min_fraction_of_max * peak)
                continue;
            bool is_max = true;
            for (long di = -1; di <= 1 && is_max; ++di)
                for (long dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0)
                        continue;
                    const long ii = i + di;
                    const long jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= D || jj >= R)
                        continue;
                    if (magnitude[static_cast<std::size_t>(ii * R + jj)] > v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                out.emplace_back(doppler_bins[static_cast<std::size_t>(i)], range_bins[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

}  // namespace csirad
