#include "csirad/scenario.hpp"

#include "csirad/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace csirad {
namespace {

constexpr std::string_view kTest1 = R"(# Metal plate moving from 0.6 m to 0.3 m over 3.9 s.
preset = wifi-ax211
frames = 156
snr_db = 20
coupling_db = 30
waypoint = 0.0, 0.6
waypoint = 3.9, 0.3
mover_gain_db = 0
delay_offset_samples = 2.25
phase_jump_step_rad = 1.5707963267948966
phase_jump_prob = 0.05
phase_drift_std_rad = 0.005
)";

constexpr std::string_view kGesture = R"(# Hand moving back and forth between 0 and 0.4 m, 2 s period.
preset = wifi-ax211
frames = 240
snr_db = 20
coupling_db = 30
triangle = 0.0, 0.4, 2.0, 3
mover_gain_db = 0
clutter = 1.5, -6
delay_offset_samples = -1.5
phase_jump_step_rad = 1.5707963267948966
phase_jump_prob = 0.05
phase_drift_std_rad = 0.005
)";

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

struct Line {
    std::size_t number;
    std::string key;
    std::string value;
};

[[noreturn]] void fail(const Line& l, const std::string& what) {
    throw FormatError("scenario line " + std::to_string(l.number) + " (" + l.key + "): " + what);
}

double number(const Line& l, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            fail(l, "trailing characters in '" + text + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(l, "expected a number, got '" + text + "'");
    }
}

std::vector<double> numbers(const Line& l, std::size_t min_count, std::size_t max_count) {
    std::vector<double> out;
    std::stringstream ss(l.value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(number(l, trim(item)));
    if (out.size() < min_count || out.size() > max_count)
        fail(l, "expected " + std::to_string(min_count) + ".." + std::to_string(max_count) + " values");
    return out;
}

std::size_t count(const Line& l) {
    const double v = number(l, l.value);
    if (v < 0 || v != std::floor(v))
        fail(l, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

cplx gain_from_db(double db, double phase) { return std::polar(std::pow(10.0, db / 20.0), phase); }

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    std::optional<double> coupling_db;
    double coupling_phase = 0.0;
    std::vector<Waypoint> waypoints;
    std::optional<Trajectory> triangle;
    double mover_gain_db = 0.0;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number_of_line = 0;
    while (std::getline(in, raw)) {
        ++number_of_line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        if (trim(raw).empty())
            continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw FormatError("scenario line " + std::to_string(number_of_line) + ": expected key = value");
        const Line l{number_of_line, trim(std::string_view(raw).substr(0, eq)), trim(std::string_view(raw).substr(eq + 1))};
        auto& w = sc.waveform;
        auto& imp = sc.scene.impairments;

        if (l.key == "preset") {
            if (l.value != "wifi-ax211")
                fail(l, "unknown preset '" + l.value + "'");
            w = WaveformConfig::wifi_ax211().params();
        } else if (l.key == "n_subcarriers") {
            w.n_subcarriers = count(l);
        } else if (l.key == "subcarrier_spacing_hz") {
            w.subcarrier_spacing_hz = number(l, l.value);
            w.bandwidth_hz.reset();
        } else if (l.key == "bandwidth_hz") {
            w.bandwidth_hz = number(l, l.value);
            w.subcarrier_spacing_hz.reset();
        } else if (l.key == "window_frames") {
            w.n_frames = count(l);
        } else if (l.key == "frame_interval_s") {
            w.frame_interval_s = number(l, l.value);
        } else if (l.key == "carrier_freq_hz") {
            w.carrier_freq_hz = number(l, l.value);
        } else if (l.key == "wave_speed_mps") {
            w.wave_speed_mps = number(l, l.value);
        } else if (l.key == "frames") {
            sc.frame_count = count(l);
        } else if (l.key == "ltf_seed") {
            sc.ltf_seed = count(l);
        } else if (l.key == "snr_db") {
            if (l.value == "noiseless")
                sc.scene.snr_db.reset();
            else
                sc.scene.snr_db = number(l, l.value);
        } else if (l.key == "coupling_db") {
            coupling_db = number(l, l.value);
        } else if (l.key == "coupling_phase_rad") {
            coupling_phase = number(l, l.value);
        } else if (l.key == "target") {
            const auto v = numbers(l, 3, 4);
            sc.scene.targets.push_back({v[0], v[1], gain_from_db(v[2], v.size() > 3 ? v[3] : 0.0)});
        } else if (l.key == "clutter") {
            const auto v = numbers(l, 2, 3);
            sc.scene.clutter.push_back({v[0], 0.0, gain_from_db(v[1], v.size() > 2 ? v[2] : 0.0)});
        } else if (l.key == "waypoint") {
            const auto v = numbers(l, 2, 3);
            waypoints.push_back({v[0], v[1], v.size() > 2 ? std::optional<double>(v[2]) : std::nullopt});
        } else if (l.key == "triangle") {
            const auto v = numbers(l, 4, 4);
            if (v[3] < 1 || v[3] != std::floor(v[3]) || !(v[2] > 0))
                fail(l, "need a positive period and a whole number of periods");
            triangle = Trajectory::triangle(v[0], v[1], v[2], static_cast<std::size_t>(v[3]));
        } else if (l.key == "mover_gain_db") {
            mover_gain_db = number(l, l.value);
        } else if (l.key == "delay_offset_samples") {
            imp.delay_offset_samples = number(l, l.value);
        } else if (l.key == "phase_jump_step_rad") {
            imp.phase_jump_step = number(l, l.value);
        } else if (l.key == "phase_jump_prob") {
            imp.phase_jump_prob = number(l, l.value);
        } else if (l.key == "phase_drift_std_rad") {
            imp.phase_drift_std = number(l, l.value);
        } else {
            fail(l, "unknown key");
        }
    }

    if (!waypoints.empty() && triangle)
        throw FormatError("scenario: use either waypoint or triangle, not both");
    try {
        if (!waypoints.empty())
            sc.mover = MovingTarget{Trajectory::make(std::move(waypoints)), gain_from_db(mover_gain_db, 0.0)};
        else if (triangle)
            sc.mover = MovingTarget{*triangle, gain_from_db(mover_gain_db, 0.0)};
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    }
    if (coupling_db) {
        Scene ref = sc.scene;
        if (sc.mover)
            ref.targets.push_back({0.0, 0.0, sc.mover->gain});
        const double amp = std::sqrt(reference_power(ref) * db_to_linear_power(*coupling_db));
        sc.scene.coupling = Target{0.0, 0.0, std::polar(amp, coupling_phase)};
    }
    if (sc.frame_count == 0)
        sc.frame_count = sc.waveform.n_frames;
    return sc;
}

std::optional<std::string> builtin_scenario(std::string_view name) {
    if (name == "test1")
        return std::string(kTest1);
    if (name == "gesture")
        return std::string(kGesture);
    return std::nullopt;
}

Scenario load_scenario(const std::string& name_or_path) {
    if (auto text = builtin_scenario(name_or_path))
        return parse_scenario(*text);
    std::ifstream in(name_or_path);
    if (!in)
        throw IoError("cannot open scenario '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

SimulatedCapture simulate_scenario(const Scenario& scenario, std::uint64_t seed) {
    const auto cfg = scenario.config();
    Scene scene = scenario.scene;
    scene.impairments.rng_seed = seed;

    if (scenario.mover) {
        auto symbols = generate_ltf_symbols(cfg, scenario.ltf_seed);
        auto rx = simulate_trajectory(cfg, *scenario.mover, scenario.frame_count, scene, symbols);
        auto truth = truth_rows(scenario.mover->path, scenario.frame_count, cfg.frame_interval());
        return {cfg, symbols.with_frames(scenario.frame_count), std::move(rx), std::move(truth)};
    }

    // Constant-velocity scene over the whole capture.
    const auto long_cfg = cfg.with_frames(std::max<std::size_t>(scenario.frame_count, 2));
    auto symbols = generate_ltf_symbols(long_cfg, scenario.ltf_seed);
    auto rx = simulate_capture(long_cfg, scene, symbols);
    std::vector<TruthRow> truth;
    if (!scene.targets.empty()) {
        const auto& t = scene.targets.front();
        for (std::size_t m = 0; m < scenario.frame_count; ++m)
            truth.push_back({cfg.frame_interval() * static_cast<double>(m), t.range_m, t.velocity_mps});
    }
    return {cfg, std::move(symbols), std::move(rx), std::move(truth)};
}

}  // namespace csirad
