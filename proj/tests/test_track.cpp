#include "csirad/track.hpp"

#include "csirad/scenario.hpp"

#include "doctest.h"

#include <cmath>

using namespace csirad;

namespace {

std::vector<Detection> present(const TrackResult& r) {
    std::vector<Detection> out;
    for (const auto& d : r.detections)
        if (d)
            out.push_back(*d);
    return out;
}

int sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

TEST_CASE("window bookkeeping") {
    CHECK(window_count(156, 32, 1) == 125);
    CHECK(window_count(156, 32, 2) == 63);
    CHECK(window_count(32, 32, 1) == 1);
    CHECK_THROWS_WITH_AS(window_count(31, 32, 1), doctest::Contains("shorter than one window"), std::invalid_argument);
    CHECK(window_centre(0, 32, 0.025) == doctest::Approx(15.5 * 0.025));
}

TEST_CASE("test1 tracks an approaching target") {
    const auto sim = simulate_scenario(load_scenario("test1"), 1);
    const auto res = track(sim.received, sim.symbols, sim.config, TrackOptions{});
    CHECK(res.detections.size() == 125);
    CHECK(res.window_times.size() == 125);
    const auto dets = present(res);
    CHECK(dets.size() >= 120);
    double mean_v = 0.0;
    for (const auto& d : dets) {
        mean_v += d.velocity_mps;
        CHECK(d.velocity_mps < 0.0);
    }
    mean_v /= static_cast<double>(dets.size());
    CHECK(mean_v == doctest::Approx(-0.3 / 3.9).epsilon(0.1));

    // least-squares line through the range track has the same slope
    double st = 0, sr = 0, stt = 0, str = 0;
    for (const auto& d : dets) {
        st += d.t;
        sr += d.range_m;
        stt += d.t * d.t;
        str += d.t * d.range_m;
    }
    const double n = static_cast<double>(dets.size());
    const double slope = (n * str - st * sr) / (n * stt - st * st);
    CHECK(slope == doctest::Approx(-0.075).epsilon(0.15));
}

TEST_CASE("static scene leaves nothing after SIC") {
    auto sc = parse_scenario("preset = wifi-ax211\nframes = 64\nsnr_db = noiseless\ncoupling_db = 30\n"
                             "clutter = 2.0, -3\nclutter = 7.5, -10\ndelay_offset_samples = 1.25\n"
                             "phase_jump_step_rad = 1.5707963267948966\nphase_jump_prob = 0.1\n");
    sc.scene.targets.push_back({3.0, 0.0, {0.5, 0.0}});
    const auto sim = simulate_scenario(sc, 2);
    const auto res = track(sim.received, sim.symbols, sim.config, TrackOptions{});
    CHECK(res.detections.size() == 33);
    CHECK(present(res).empty());
}

TEST_CASE("stride 2 timestamps are a subsequence of stride 1") {
    auto sc = load_scenario("test1");
    sc.frame_count = 80;
    const auto sim = simulate_scenario(sc, 4);
    TrackOptions one;
    TrackOptions two;
    two.stride = 2;
    const auto a = track(sim.received, sim.symbols, sim.config, one);
    const auto b = track(sim.received, sim.symbols, sim.config, two);
    CHECK(b.window_times.size() == (a.window_times.size() + 1) / 2);
    for (std::size_t i = 0; i < b.window_times.size(); ++i) {
        CHECK(b.window_times[i] == a.window_times[2 * i]);
        CHECK(b.detections[i].has_value() == a.detections[2 * i].has_value());
        if (b.detections[i])
            CHECK(b.detections[i]->range_m == a.detections[2 * i]->range_m);
    }
}

TEST_CASE("gesture velocity sign alternates with the motion") {
    const auto sc = load_scenario("gesture");
    const auto sim = simulate_scenario(sc, 1);
    const auto res = track(sim.received, sim.symbols, sim.config, TrackOptions{});
    const double period = 2.0;
    int mismatches = 0;
    for (std::size_t w = 0; w < res.detections.size(); ++w) {
        const double t = res.window_times[w];
        const double phase = std::fmod(t, period / 2.0);
        const bool near_reversal = phase < 0.05 || phase > period / 2.0 - 0.05;
        if (near_reversal || !res.detections[w])
            continue;
        const int expect = sc.mover->path.velocity_at(t) > 0 ? 1 : -1;
        if (sign(res.detections[w]->velocity_mps) != expect)
            ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("Doppler-time profile of a static scene") {
    auto sc = parse_scenario("preset = wifi-ax211\nframes = 48\nsnr_db = noiseless\ncoupling_db = 20\n");
    sc.scene.targets.push_back({2.0, 0.0, {1.0, 0.0}});
    const auto sim = simulate_scenario(sc, 1);
    TrackOptions raw;
    raw.sic = false;
    const auto before = doppler_time_profile(sim.received, sim.symbols, sim.config, raw);
    CHECK(before.windows == 17);
    CHECK(before.times.size() == 17);
    for (std::size_t w = 0; w < before.windows; ++w)
        CHECK(before.dominant_doppler(w) == 0);

    const auto after = doppler_time_profile(sim.received, sim.symbols, sim.config, TrackOptions{});
    double e_before = 0, e_after = 0;
    for (double e : before.energy)
        e_before += e;
    for (double e : after.energy)
        e_after += e;
    CHECK(e_after < 1e-20 * e_before);
}

TEST_CASE("constant velocity gives a single horizontal ridge") {
    auto sc = parse_scenario("preset = wifi-ax211\nframes = 96\nsnr_db = 20\ncoupling_db = 30\n");
    const auto cfg = sc.config();
    sc.scene.targets.push_back({5.0, 5 * doppler_resolution(cfg), {1.0, 0.0}});
    const auto sim = simulate_scenario(sc, 1);
    const auto prof = doppler_time_profile(sim.received, sim.symbols, sim.config, TrackOptions{});
    for (std::size_t w = 0; w < prof.windows; ++w)
        CHECK(prof.dominant_doppler(w) == 5);
}

TEST_CASE("gesture profile shows alternating ridges and no zero-Doppler ridge") {
    const auto sc = load_scenario("gesture");
    const auto sim = simulate_scenario(sc, 1);
    const auto prof = doppler_time_profile(sim.received, sim.symbols, sim.config, TrackOptions{});
    TrackOptions raw;
    raw.sic = false;
    const auto before = doppler_time_profile(sim.received, sim.symbols, sim.config, raw);
    CHECK(prof.windows == 209);
    int pos = 0, neg = 0;
    const auto zero_row = static_cast<std::size_t>(prof.doppler_bins / 2);
    for (std::size_t w = 0; w < prof.windows; ++w) {
        const int p = prof.dominant_doppler(w);
        CHECK(p != 0);
        CHECK(before.dominant_doppler(w) == 0);
        pos += p > 0;
        neg += p < 0;
        CHECK(prof.at(zero_row, w) < 1e-4 * before.at(zero_row, w));
    }
    CHECK(pos > 80);
    CHECK(neg > 80);
}

TEST_CASE("track errors") {
    const auto sim = simulate_scenario(load_scenario("test1"), 1);
    TrackOptions too_long;
    too_long.window = 200;
    CHECK_THROWS_AS(track(sim.received, sim.symbols, sim.config, too_long), std::invalid_argument);
}
