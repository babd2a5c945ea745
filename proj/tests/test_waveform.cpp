#include "csirad/waveform.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace csirad;

namespace {

WaveformParams minimal() {
    WaveformParams p;
    p.n_subcarriers = 2;
    p.n_frames = 2;
    p.subcarrier_spacing_hz = 1.0;
    p.frame_interval_s = 1.0;
    p.carrier_freq_hz = 1.0;
    return p;
}

}  // namespace

TEST_CASE("make_config derives bandwidth from spacing") {
    const auto cfg = WaveformConfig::wifi_ax211();
    CHECK(cfg.bandwidth() == doctest::Approx(160e6).epsilon(1e-12));
    CHECK(cfg.n_subcarriers() == 512);
    CHECK(cfg.n_frames() == 32);

    const auto tiny = WaveformConfig::make(minimal());
    CHECK(tiny.bandwidth() == 2.0);
}

TEST_CASE("make_config rejects invalid parameters") {
    auto p = WaveformConfig::wifi_ax211().params();
    p.bandwidth_hz = 100e6;
    CHECK_THROWS_WITH_AS(WaveformConfig::make(p), doctest::Contains("inconsistent bandwidth"), std::invalid_argument);

    auto q = minimal();
    q.n_subcarriers = 1;
    CHECK_THROWS_AS(WaveformConfig::make(q), std::invalid_argument);
    q = minimal();
    q.n_frames = 1;
    CHECK_THROWS_AS(WaveformConfig::make(q), std::invalid_argument);
    q = minimal();
    q.frame_interval_s = 0.0;
    CHECK_THROWS_AS(WaveformConfig::make(q), std::invalid_argument);
    q = minimal();
    q.carrier_freq_hz = -1.0;
    CHECK_THROWS_AS(WaveformConfig::make(q), std::invalid_argument);
    q = minimal();
    q.subcarrier_spacing_hz.reset();
    CHECK_THROWS_AS(WaveformConfig::make(q), std::invalid_argument);

    // consistent to 1 part in 1e9 is accepted
    p = WaveformConfig::wifi_ax211().params();
    p.bandwidth_hz = 160e6 * (1.0 + 5e-10);
    CHECK_NOTHROW(WaveformConfig::make(p));
}

TEST_CASE("LTF symbols are deterministic, unit-modulus and repeated per frame") {
    const auto cfg = WaveformConfig::wifi_ax211();
    const auto a = generate_ltf_symbols(cfg, 7);
    const auto b = generate_ltf_symbols(cfg, 7);
    CHECK(a.values() == b.values());
    CHECK_FALSE(a.values() == generate_ltf_symbols(cfg, 8).values());
    for (const auto& s : a.values().values())
        CHECK(std::abs(std::abs(s) - 1.0) < 1e-12);
    for (std::size_t n = 0; n < cfg.n_subcarriers(); ++n)
        CHECK(a(0, n) == a(5, n));
}

TEST_CASE("user-supplied LTF sequence") {
    const std::vector<cplx> seq{{1, 0}, {-1, 0}, {0, 1}};
    const auto g = SymbolGrid::from_sequence(seq, 4);
    CHECK(g.rows() == 4);
    CHECK(g(3, 2) == cplx(0, 1));
    const std::vector<cplx> bad{{1, 0}, {0, 0}};
    CHECK_THROWS_AS(SymbolGrid::from_sequence(bad, 2), std::invalid_argument);
}

TEST_CASE("range resolution") {
    const auto cfg = WaveformConfig::wifi_ax211();
    CHECK(range_resolution(cfg) == doctest::Approx(0.936875).epsilon(1e-12));

    auto p = minimal();
    p.n_subcarriers = 2;
    p.subcarrier_spacing_hz.reset();
    p.bandwidth_hz = 1.499e8;
    CHECK(range_resolution(WaveformConfig::make(p)) == doctest::Approx(1.0).epsilon(1e-12));

    // 4 GHz: 0.0375 m with c = 3e8, 0.037475 with c = 2.998e8
    p.bandwidth_hz = 4e9;
    CHECK(range_resolution(WaveformConfig::make(p)) == doctest::Approx(0.037475).epsilon(1e-12));
}

TEST_CASE("doppler resolution") {
    const auto cfg = WaveformConfig::wifi_ax211();
    CHECK(doppler_resolution(cfg) == doctest::Approx(0.029742063492063493).epsilon(1e-12));
    CHECK(formula::velocity_resolution(kSpeedOfLight, 1, kSpeedOfLight / 2.0, 1.0) == doctest::Approx(1.0));
    CHECK(doppler_resolution(cfg.with_frames(64)) == doctest::Approx(doppler_resolution(cfg) / 2.0));

    // second form c*Δf/(2 M f_c) when T = 1/Δf
    auto p = cfg.params();
    p.frame_interval_s = 1.0 / *p.subcarrier_spacing_hz;
    const auto c2 = WaveformConfig::make(p);
    const double alt = c2.wave_speed() * c2.subcarrier_spacing() / (2.0 * 32 * c2.carrier_freq());
    CHECK(std::abs(doppler_resolution(c2) - alt) <= 1e-12 * alt);
}

TEST_CASE("unambiguous limits") {
    const auto lim = unambiguous_limits(WaveformConfig::wifi_ax211());
    CHECK(lim.max_range == doctest::Approx(479.68).epsilon(1e-12));
    CHECK(lim.max_velocity == doctest::Approx(0.9517460317460318).epsilon(1e-12));
    CHECK(lim.velocity_half_span() == doctest::Approx(0.4758730158730159).epsilon(1e-12));
    // single-cell case is below the config minimum; checked on the closed form
    CHECK(formula::max_range(kSpeedOfLight, 1, 160e6) == doctest::Approx(formula::range_resolution(kSpeedOfLight, 160e6)));
}

TEST_CASE("range accuracy") {
    const auto cfg = WaveformConfig::wifi_ax211();
    CHECK(range_accuracy(cfg, 100.0) == doctest::Approx(0.06624706656241466).epsilon(1e-12));
    CHECK(range_accuracy(cfg, 0.5) == doctest::Approx(range_resolution(cfg)));
    CHECK(range_accuracy(cfg, 400.0) == doctest::Approx(range_accuracy(cfg, 100.0) / 2.0));
    CHECK_THROWS_AS(range_accuracy(cfg, 0.0), std::invalid_argument);
    // accuracy never exceeds resolution for SNR >= 0.5
    for (double snr : {0.5, 1.0, 10.0, 1e4})
        CHECK(range_accuracy(cfg, snr) <= range_resolution(cfg) * (1 + 1e-15));
}

TEST_CASE("calculator properties over random configs") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> n_dist(2, 4096);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        WaveformParams p;
        p.n_subcarriers = n_dist(rng);
        p.n_frames = n_dist(rng);
        p.subcarrier_spacing_hz = u(rng) * 1e5;
        p.frame_interval_s = u(rng) * 1e-3;
        p.carrier_freq_hz = u(rng) * 1e9;
        const auto a = WaveformConfig::make(p);
        // same waveform given by bandwidth instead of spacing
        WaveformParams q = p;
        q.bandwidth_hz = static_cast<double>(p.n_subcarriers) * *p.subcarrier_spacing_hz;
        q.subcarrier_spacing_hz.reset();
        const auto b = WaveformConfig::make(q);

        const auto ra = resolution_report(a, 50.0);
        const auto rb = resolution_report(b, 50.0);
        CHECK(ra.range_resolution == doctest::Approx(rb.range_resolution).epsilon(1e-12));
        CHECK(ra.velocity_resolution == doctest::Approx(rb.velocity_resolution).epsilon(1e-12));
        CHECK(ra.max_range == doctest::Approx(rb.max_range).epsilon(1e-12));
        CHECK(*ra.range_accuracy == doctest::Approx(*rb.range_accuracy).epsilon(1e-12));
        // R_max = N * Δr
        CHECK(ra.max_range == doctest::Approx(static_cast<double>(p.n_subcarriers) * ra.range_resolution).epsilon(1e-12));
        CHECK(ra.range_resolution > 0);
        CHECK(ra.velocity_resolution > 0);
        CHECK(ra.max_velocity > 0);
    }
}
