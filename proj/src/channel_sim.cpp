#include "csirad/channel_sim.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace csirad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kPhaseStream = 0x9e3779b97f4a7c15ULL;

struct PathComponent {
    cplx coeff;      // gain times slow-time phase for this frame
    double delay_s;  // round-trip delay
};

// received(n) = S(n) * sum_k coeff_k e^{-j2π n Δf τ_k}
void synth_frame(std::span<cplx> out, std::span<const cplx> symbols, std::span<const PathComponent> paths,
                 double spacing) {
    std::fill(out.begin(), out.end(), cplx{});
    for (const auto& p : paths) {
        const double step = -kTwoPi * spacing * p.delay_s;
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] += p.coeff * std::polar(1.0, step * static_cast<double>(n));
    }
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] *= symbols[n];
}

double noise_sigma(const Scene& scene) {
    if (!scene.snr_db)
        return 0.0;
    return std::sqrt(reference_power(scene) / db_to_linear_power(*scene.snr_db));
}

// Noise, delay offset and phase error for one frame; the noise stream depends
// only on (seed, frame) so frames can be produced in any order.
void impair_frame(std::span<cplx> row, std::size_t frame, double sigma, double phase, const Impairments& imp,
                  std::size_t n_sub) {
    if (sigma > 0.0) {
        std::mt19937_64 rng(detail::mix_seed(imp.rng_seed, frame));
        std::normal_distribution<double> gauss(0.0, sigma / std::numbers::sqrt2);
        for (auto& v : row) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += cplx(re, im);
        }
    }
    if (imp.delay_offset_samples != 0.0) {
        const double step = -kTwoPi * imp.delay_offset_samples / static_cast<double>(n_sub);
        for (std::size_t n = 0; n < row.size(); ++n)
            row[n] *= std::polar(1.0, step * static_cast<double>(n));
    }
    if (phase != 0.0) {
        const cplx rot = std::polar(1.0, phase);
        for (auto& v : row)
            v *= rot;
    }
}

void check_reflector(const WaveformConfig& cfg, const Target& t, const char* what) {
    const auto lim = unambiguous_limits(cfg);
    if (!(t.range_m >= 0.0 && t.range_m < lim.max_range))
        throw std::invalid_argument(std::string(what) + " range outside unambiguous interval");
    if (!(std::abs(t.velocity_mps) < lim.velocity_half_span()))
        throw std::invalid_argument(std::string(what) + " velocity outside unambiguous interval");
}

std::vector<PathComponent> static_components(const WaveformConfig& cfg, const Scene& scene, std::size_t frame) {
    std::vector<PathComponent> out;
    const double t = cfg.frame_interval() * static_cast<double>(frame);
    auto add = [&](const Target& tg) {
        out.push_back({tg.gain * std::polar(1.0, kTwoPi * t * tg.doppler(cfg)), tg.delay(cfg)});
    };
    if (scene.coupling)
        add(*scene.coupling);
    for (const auto& c : scene.clutter)
        add(c);
    for (const auto& tg : scene.targets)
        add(tg);
    return out;
}

}  // namespace

namespace detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser over the combined key
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

void Scene::add_coupling_db(double db_above, double phase_rad) {
    const double amp = std::sqrt(reference_power(*this) * db_to_linear_power(db_above));
    coupling = Target{0.0, 0.0, std::polar(amp, phase_rad)};
}

double reference_power(const Scene& scene) {
    double best = 0.0;
    bool found = false;
    for (const auto& t : scene.targets) {
        best = std::max(best, std::norm(t.gain));
        found = true;
    }
    for (const auto& t : scene.clutter) {
        best = std::max(best, std::norm(t.gain));
        found = true;
    }
    if (found && best > 0.0)
        return best;
    if (scene.coupling && std::norm(scene.coupling->gain) > 0.0)
        return std::norm(scene.coupling->gain);
    return 1.0;
}

void validate_scene(const WaveformConfig& cfg, const Scene& scene) {
    for (const auto& t : scene.targets)
        check_reflector(cfg, t, "target");
    for (const auto& t : scene.clutter) {
        check_reflector(cfg, t, "clutter");
        if (t.velocity_mps != 0.0)
            throw std::invalid_argument("clutter must be static");
    }
    if (scene.coupling) {
        const auto& c = *scene.coupling;
        if (c.range_m != 0.0 || c.velocity_mps != 0.0)
            throw std::invalid_argument("coupling must sit at zero range and zero velocity");
        for (const auto* list : {&scene.targets, &scene.clutter})
            for (const auto& t : *list)
                if (std::abs(t.gain) > std::abs(c.gain))
                    throw std::invalid_argument("coupling must be the strongest return");
    }
    const auto& imp = scene.impairments;
    if (imp.phase_jump_prob < 0.0 || imp.phase_jump_prob > 1.0)
        throw std::invalid_argument("phase jump probability outside [0, 1]");
    if (imp.phase_jump_prob > 0.0 && !(imp.phase_jump_step > 0.0))
        throw std::invalid_argument("phase jump step must be positive when jumps are enabled");
    if (imp.phase_drift_std < 0.0)
        throw std::invalid_argument("phase drift std must be non-negative");
}

std::vector<double> impairment_phases(const Impairments& imp, std::size_t frame_count) {
    std::vector<double> phases(frame_count, 0.0);
    if (imp.phase_jump_prob <= 0.0 && imp.phase_drift_std <= 0.0)
        return phases;
    std::mt19937_64 rng(detail::mix_seed(imp.rng_seed, kPhaseStream));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double jumps = 0.0;
    for (std::size_t m = 0; m < frame_count; ++m) {
        if (m > 0 && uni(rng) < imp.phase_jump_prob) {
            static constexpr int kMultiples[] = {-2, -1, 1, 2};
            jumps += kMultiples[rng() % 4] * imp.phase_jump_step;
        }
        const double drift = gauss(rng) * imp.phase_drift_std;
        phases[m] = jumps + drift;
    }
    return phases;
}

CsiGrid simulate_capture(const WaveformConfig& cfg, const Scene& scene, const SymbolGrid& symbols) {
    validate_scene(cfg, scene);
    const std::size_t rows = cfg.n_frames();
    const std::size_t cols = cfg.n_subcarriers();
    if (symbols.rows() != rows || symbols.cols() != cols)
        throw std::invalid_argument("simulate_capture: symbol grid does not match config");

    const auto phases = impairment_phases(scene.impairments, rows);
    const double sigma = noise_sigma(scene);
    CsiGrid out(rows, cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(rows); ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        const auto paths = static_components(cfg, scene, m);
        synth_frame(out.row(m), symbols.values().row(m), paths, cfg.subcarrier_spacing());
        impair_frame(out.row(m), m, sigma, phases[m], scene.impairments, cols);
    }
    return out;
}

CsiGrid csi_divide(const CsiGrid& received, const SymbolGrid& symbols) {
    require_same_shape(received, symbols.values(), "csi_divide");
    CsiGrid out(received.rows(), received.cols());
    const auto in = received.values();
    const auto s = symbols.values().values();
    auto o = out.values();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(in.size()); ++i)
        o[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(i)] / s[static_cast<std::size_t>(i)];
    return out;
}

CsiGrid simulate_trajectory(const WaveformConfig& cfg, const MovingTarget& mover, std::size_t frame_count,
                            const Scene& extras, const SymbolGrid& symbols) {
    const double T = cfg.frame_interval();
    const double needed = T * static_cast<double>(frame_count);
    if (mover.path.start() > 1e-9 || mover.path.end() < needed - 1e-9)
        throw std::invalid_argument("simulate_trajectory: path shorter than capture");
    validate_scene(cfg, extras);
    if (symbols.cols() != cfg.n_subcarriers())
        throw std::invalid_argument("simulate_trajectory: symbol grid does not match config");

    const auto lim = unambiguous_limits(cfg);
    const double r0 = mover.path.range_at(0.0);
    const double phase_per_meter = kTwoPi * 2.0 * cfg.carrier_freq() / cfg.wave_speed();
    for (std::size_t m = 0; m < frame_count; ++m) {
        const double t = T * static_cast<double>(m);
        const double r = mover.path.range_at(t);
        if (!(r >= 0.0 && r < lim.max_range))
            throw std::invalid_argument("simulate_trajectory: mover leaves the unambiguous range");
        if (!(std::abs(mover.path.velocity_at(t)) < lim.velocity_half_span()))
            throw std::invalid_argument("simulate_trajectory: mover exceeds the unambiguous velocity");
    }

    Scene noise_ref = extras;
    noise_ref.targets.push_back(Target{r0, 0.0, mover.gain});
    const double sigma = noise_sigma(noise_ref);
    const auto phases = impairment_phases(extras.impairments, frame_count);
    const auto seq = symbols.sequence();

    CsiGrid out(frame_count, cfg.n_subcarriers());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(frame_count); ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        const double t = T * static_cast<double>(m);
        auto paths = static_components(cfg, extras, m);
        const double r = mover.path.range_at(t);
        paths.push_back({mover.gain * std::polar(1.0, phase_per_meter * (r - r0)), 2.0 * r / cfg.wave_speed()});
        synth_frame(out.row(m), seq, paths, cfg.subcarrier_spacing());
        impair_frame(out.row(m), m, sigma, phases[m], extras.impairments, cfg.n_subcarriers());
    }
    return out;
}

std::vector<TruthRow> truth_rows(const Trajectory& path, std::size_t frame_count, double frame_interval) {
    std::vector<TruthRow> rows;
    rows.reserve(frame_count);
    for (std::size_t m = 0; m < frame_count; ++m) {
        const double t = frame_interval * static_cast<double>(m);
        rows.push_back({t, path.range_at(t), path.velocity_at(t)});
    }
    return rows;
}

}  // namespace csirad
