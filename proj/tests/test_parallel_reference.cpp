#include "csirad/track.hpp"

#include "csirad/scenario.hpp"
#include "csirad/sic.hpp"

#include "doctest.h"

#include <random>

using namespace csirad;

namespace {

CsiGrid random_grid(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CsiGrid out(rows, cols);
    for (auto& v : out.values())
        v = {g(rng), g(rng)};
    return out;
}

WaveformConfig cfg_n(std::size_t n, std::size_t m) {
    auto p = WaveformConfig::wifi_ax211().params();
    p.n_subcarriers = n;
    p.n_frames = m;
    p.subcarrier_spacing_hz = 160e6 / static_cast<double>(n);
    return WaveformConfig::make(p);
}

}  // namespace

TEST_CASE("FFT map matches the direct DFT") {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{16, 32}, {32, 128}, {5, 12}}) {
        const auto cfg = cfg_n(n, m);
        const auto d = random_grid(m, n, m * n);
        for (const auto& opts : {MapOptions{}, MapOptions::rectangular()}) {
            const auto fast = range_doppler(d, cfg, opts);
            const auto slow = reference::range_doppler(d, cfg, opts);
            const double scale = std::sqrt(slow.energy() / static_cast<double>(slow.values.size()));
            CHECK(max_abs_diff(fast.values, slow.values) < 1e-9 * scale);
            CHECK(fast.range_scale == slow.range_scale);
            CHECK(fast.velocity_scale == slow.velocity_scale);
        }
    }
}

TEST_CASE("parallel SIC matches the serial one") {
    const auto d = random_grid(32, 512, 9);
    CHECK(max_abs_diff(remove_dc(d), reference::remove_dc(d)) < 1e-12);
}

TEST_CASE("parallel tracker matches the serial one") {
    auto sc = load_scenario("test1");
    sc.frame_count = 40;
    const auto sim = simulate_scenario(sc, 5);
    const TrackOptions opts;
    const auto fast = track(sim.received, sim.symbols, sim.config, opts);
    const auto slow = reference::track(sim.received, sim.symbols, sim.config, opts);
    REQUIRE(fast.detections.size() == slow.detections.size());
    CHECK(fast.window_times == slow.window_times);
    for (std::size_t w = 0; w < fast.detections.size(); ++w) {
        REQUIRE(fast.detections[w].has_value() == slow.detections[w].has_value());
        if (!fast.detections[w])
            continue;
        CHECK(fast.detections[w]->bin_l == slow.detections[w]->bin_l);
        CHECK(fast.detections[w]->bin_p == slow.detections[w]->bin_p);
        CHECK(fast.detections[w]->range_m == doctest::Approx(slow.detections[w]->range_m).epsilon(1e-9));
        CHECK(fast.detections[w]->velocity_mps == doctest::Approx(slow.detections[w]->velocity_mps).epsilon(1e-9));
    }
}
