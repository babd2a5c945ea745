// Parallel kernels against their serial references.

#include "csirad/channel_sim.hpp"
#include "csirad/scenario.hpp"
#include "csirad/sic.hpp"
#include "csirad/track.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace csirad;

struct Fixture {
    WaveformConfig cfg;
    CsiGrid csi;
};

Fixture make_fixture(std::size_t n_sub, std::size_t frames) {
    WaveformParams p = WaveformConfig::wifi_ax211().params();
    p.n_subcarriers = n_sub;
    p.n_frames = frames;
    p.subcarrier_spacing_hz = 160e6 / static_cast<double>(n_sub);
    const auto cfg = WaveformConfig::make(p);
    Scene scene;
    scene.targets.push_back({3.0, 0.1, {1.0, 0.0}});
    scene.add_coupling_db(30.0);
    scene.snr_db = 20.0;
    const auto sym = generate_ltf_symbols(cfg, 1);
    return {cfg, csi_divide(simulate_capture(cfg, scene, sym), sym)};
}

void BM_RangeDopplerParallel(benchmark::State& state) {
    const auto f = make_fixture(static_cast<std::size_t>(state.range(0)), 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(range_doppler(f.csi, f.cfg));
}

void BM_RangeDopplerSerialReference(benchmark::State& state) {
    const auto f = make_fixture(static_cast<std::size_t>(state.range(0)), 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::range_doppler(f.csi, f.cfg));
}

void BM_RemoveDcParallel(benchmark::State& state) {
    const auto f = make_fixture(512, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(remove_dc(f.csi));
}

void BM_RemoveDcSerialReference(benchmark::State& state) {
    const auto f = make_fixture(512, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::remove_dc(f.csi));
}

SimulatedCapture small_test1() {
    auto sc = load_scenario("test1");
    sc.waveform.n_subcarriers = 128;
    sc.waveform.subcarrier_spacing_hz = 1.25e6;
    sc.frame_count = 64;
    sc.mover->path = Trajectory::linear(0.0, 0.6, 1.6, 0.48);
    return simulate_scenario(sc, 1);
}

void BM_TrackParallel(benchmark::State& state) {
    const auto sim = small_test1();
    TrackOptions opts;
    for (auto _ : state)
        benchmark::DoNotOptimize(track(sim.received, sim.symbols, sim.config, opts));
}

void BM_TrackSerialReference(benchmark::State& state) {
    const auto sim = small_test1();
    TrackOptions opts;
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::track(sim.received, sim.symbols, sim.config, opts));
}

}  // namespace

BENCHMARK(BM_RangeDopplerParallel)->Arg(64)->Arg(128)->Arg(512);
BENCHMARK(BM_RangeDopplerSerialReference)->Arg(64)->Arg(128)->Arg(512);
BENCHMARK(BM_RemoveDcParallel);
BENCHMARK(BM_RemoveDcSerialReference);
BENCHMARK(BM_TrackParallel);
BENCHMARK(BM_TrackSerialReference);

BENCHMARK_MAIN();
