#include "csirad/cli.hpp"

#include "csirad/capture_io.hpp"
#include "csirad/errors.hpp"
#include "csirad/evaluate.hpp"
#include "csirad/exports.hpp"
#include "csirad/scenario.hpp"
#include "csirad/track.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>

namespace csirad::cli {
namespace {

struct CalcArgs {
    std::string preset = "wifi-ax211";
    std::optional<std::size_t> subcarriers;
    std::optional<std::size_t> frames;
    std::optional<double> spacing;
    std::optional<double> bandwidth;
    std::optional<double> interval;
    std::optional<double> carrier;
    std::optional<double> wave_speed;
    std::optional<double> snr_db;
};

struct SimulateArgs {
    std::string scenario;
    std::uint64_t seed = 1;
    std::string out;
    std::string truth;
};

struct ProcessArgs {
    std::string capture;
    std::string out;
    std::size_t window = 32;
    std::size_t stride = 1;
    bool no_sic = false;
    bool no_sync = false;
    std::string emit_maps;
    std::string emit_spectrogram;
    std::string emit_sync_report;
    double delta = SyncParams{}.phase_step;
    int history = SyncParams{}.history;
    int upsample = SyncParams{}.upsample;
    std::optional<int> max_lag;
    bool average_frames = false;
    std::string fft_window = "hann";
    std::size_t pad = 1;
    double threshold_db = 12.0;
    std::uint64_t ltf_seed = kDefaultLtfSeed;
    bool csi_input = false;
};

struct EvalArgs {
    std::string detections;
    std::string truth;
    double max_range_err = 0.10;
    double max_vel_err = 0.03;
    double min_speed = 0.0;
};

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::trunc) {
    std::ofstream f(path, mode);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    return f;
}

int cmd_calc(const CalcArgs& a, std::ostream& out) {
    if (a.preset != "wifi-ax211")
        throw std::invalid_argument("unknown preset '" + a.preset + "'");
    auto p = WaveformConfig::wifi_ax211().params();
    if (a.subcarriers)
        p.n_subcarriers = *a.subcarriers;
    if (a.frames)
        p.n_frames = *a.frames;
    if (a.bandwidth && !a.spacing)
        p.subcarrier_spacing_hz.reset();
    if (a.spacing)
        p.subcarrier_spacing_hz = *a.spacing;
    if (a.bandwidth)
        p.bandwidth_hz = *a.bandwidth;
    if (a.interval)
        p.frame_interval_s = *a.interval;
    if (a.carrier)
        p.carrier_freq_hz = *a.carrier;
    if (a.wave_speed)
        p.wave_speed_mps = *a.wave_speed;
    const auto cfg = WaveformConfig::make(p);
    std::optional<double> snr;
    if (a.snr_db)
        snr = db_to_linear_power(*a.snr_db);
    const auto r = resolution_report(cfg, snr);

    out << std::fixed << std::setprecision(4);
    out << "bandwidth_hz          " << std::setprecision(1) << cfg.bandwidth() << std::setprecision(4) << '\n';
    out << "range_resolution_m    " << r.range_resolution << '\n';
    out << "velocity_resolution   " << r.velocity_resolution << " m/s\n";
    out << "max_range_m           " << r.max_range << '\n';
    out << "max_velocity          +/-" << r.max_velocity / 2.0 << " m/s (span " << r.max_velocity << ")\n";
    if (r.range_accuracy)
        out << "range_accuracy_m      " << *r.range_accuracy << " at " << *a.snr_db << " dB\n";
    return kOk;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto scenario = load_scenario(a.scenario);
    const auto sim = simulate_scenario(scenario, a.seed);
    write_capture(a.out, sim.config, sim.received);
    const std::string truth = a.truth.empty() ? a.out + ".truth.csv" : a.truth;
    write_ground_truth(truth, sim.truth);
    out << "wrote " << sim.received.rows() << " frames x " << sim.received.cols() << " subcarriers to " << a.out
        << "\nwrote truth to " << truth << '\n';
    return kOk;
}

int cmd_process(const ProcessArgs& a, std::ostream& out) {
    const auto cap = read_capture(a.capture);
    const auto cfg = cap.header.config(a.window);

    TrackOptions opts;
    opts.window = a.window;
    opts.stride = a.stride;
    opts.sync = !a.no_sync;
    opts.sic = !a.no_sic;
    opts.sync_params.phase_step = a.delta;
    opts.sync_params.history = a.history;
    opts.sync_params.upsample = a.upsample;
    opts.sync_params.max_lag = a.max_lag;
    opts.sync_params.average_frames = a.average_frames;
    opts.sync_params.validate(cfg.n_subcarriers());
    const auto kind = parse_window(a.fft_window);
    opts.map = MapOptions{kind, kind, a.pad};
    opts.detect.threshold_db = a.threshold_db;
    window_count(cap.frames.rows(), opts.window, opts.stride);

    SymbolGrid symbols = [&] {
        if (a.csi_input) {
            std::vector<cplx> ones(cfg.n_subcarriers(), cplx{1.0, 0.0});
            return SymbolGrid::from_sequence(ones, cap.frames.rows());
        }
        return generate_ltf_symbols(cfg.with_frames(std::max<std::size_t>(cap.frames.rows(), 2)), a.ltf_seed);
    }();

    const auto result = track(cap.frames, symbols, cfg, opts);
    if (a.out.empty()) {
        write_detections(out, result.detections);
    } else {
        auto f = open_out(a.out);
        write_detections(f, result.detections);
    }

    if (!a.emit_sync_report.empty()) {
        auto f = open_out(a.emit_sync_report);
        f << to_json(result.sync) << '\n';
    }
    if (!a.emit_spectrogram.empty()) {
        const auto prof = doppler_time_profile(cap.frames, symbols, cfg, opts);
        auto f = open_out(a.emit_spectrogram);
        write_profile_csv(f, prof);
    }
    if (!a.emit_maps.empty()) {
        std::filesystem::create_directories(a.emit_maps);
        const auto prepared = prepare_capture(cap.frames, symbols, opts);
        for (std::size_t w = 0; w < result.detections.size(); ++w) {
            const auto map = window_map(prepared.csi, w * opts.stride, cfg, opts);
            char name[32];
            std::snprintf(name, sizeof name, "map_%04zu", w);
            const auto base = std::filesystem::path(a.emit_maps) / name;
            auto csv = open_out(base.string() + ".csv");
            write_map_csv(csv, map);
            auto pgm = open_out(base.string() + ".pgm", std::ios::binary | std::ios::trunc);
            write_map_pgm(pgm, map);
        }
    }
    return kOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream in(a.detections);
    if (!in)
        throw IoError("cannot open '" + a.detections + "'");
    const auto dets = read_detections(in);
    const auto truth = read_ground_truth(a.truth);
    if (dets.empty()) {
        err << "error: nothing to evaluate\n";
        return kEvalFailed;
    }
    EvalReport rep;
    try {
        rep = evaluate(dets, truth, a.min_speed);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kEvalFailed;
    }
    out << std::fixed << std::setprecision(4);
    out << "scored " << rep.range.count << " detections (" << rep.skipped_slow << " below speed gate)\n";
    out << "range_err_m     median " << rep.range.median << "  mean " << rep.range.mean << "  p90 " << rep.range.p90
        << '\n';
    out << "velocity_err    median " << rep.velocity.median << "  mean " << rep.velocity.mean << "  p90 "
        << rep.velocity.p90 << " m/s\n";
    const bool ok = rep.range.median <= a.max_range_err && rep.velocity.median <= a.max_vel_err;
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kEvalFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Range-Doppler sensing from Wi-Fi CSI"};
    app.require_subcommand(1);

    CalcArgs calc;
    auto* c = app.add_subcommand("calc", "Resolution, ambiguity and accuracy of a waveform");
    c->add_option("--preset", calc.preset, "Base waveform (wifi-ax211)");
    c->add_option("--subcarriers", calc.subcarriers);
    c->add_option("--frames", calc.frames);
    c->add_option("--spacing", calc.spacing, "Subcarrier spacing in Hz");
    c->add_option("--bandwidth", calc.bandwidth, "Bandwidth in Hz");
    c->add_option("--interval", calc.interval, "Frame interval in s");
    c->add_option("--carrier", calc.carrier, "Carrier frequency in Hz");
    c->add_option("--wave-speed", calc.wave_speed);
    c->add_option("--snr-db", calc.snr_db, "Report range accuracy at this SNR");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Write a simulated capture and its ground truth");
    s->add_option("--scenario", sim.scenario, "test1, gesture, or a scenario file")->required();
    s->add_option("--seed", sim.seed, "Noise and impairment seed");
    s->add_option("--out", sim.out, "Capture file")->required();
    s->add_option("--truth", sim.truth, "Truth CSV (default <out>.truth.csv)");

    ProcessArgs proc;
    auto* p = app.add_subcommand("process", "Sync, SIC and range-Doppler tracking of a capture");
    p->add_option("capture", proc.capture)->required();
    p->add_option("--out", proc.out, "Detections JSON-lines (default stdout)");
    p->add_option("--window", proc.window)->check(CLI::Range(2, 1 << 20));
    p->add_option("--stride", proc.stride)->check(CLI::Range(1, 1 << 20));
    p->add_flag("--no-sic", proc.no_sic);
    p->add_flag("--no-sync", proc.no_sync);
    p->add_option("--emit-maps", proc.emit_maps, "Directory for per-window CSV/PGM maps");
    p->add_option("--emit-spectrogram", proc.emit_spectrogram, "Doppler-time profile CSV");
    p->add_option("--emit-sync-report", proc.emit_sync_report, "Sync report JSON");
    p->add_option("--delta", proc.delta, "Phase correction step (rad)");
    p->add_option("--history", proc.history);
    p->add_option("--upsample", proc.upsample);
    p->add_option("--max-lag", proc.max_lag);
    p->add_flag("--average-frames", proc.average_frames, "Correlate over all frames");
    p->add_option("--fft-window", proc.fft_window)->check(CLI::IsMember({"hann", "rect"}));
    p->add_option("--pad", proc.pad, "Zero-padding factor")->check(CLI::Range(1, 8));
    p->add_option("--threshold-db", proc.threshold_db);
    p->add_option("--ltf-seed", proc.ltf_seed);
    p->add_flag("--csi-input", proc.csi_input, "Capture already holds CSI (no symbol division)");

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "Compare detections with ground truth");
    e->add_option("--detections", ev.detections)->required();
    e->add_option("--truth", ev.truth)->required();
    e->add_option("--max-range-err", ev.max_range_err);
    e->add_option("--max-vel-err", ev.max_vel_err);
    e->add_option("--min-speed", ev.min_speed, "Score only where |v_true| >= this");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return kBadArguments;
    }

    try {
        if (c->parsed())
            return cmd_calc(calc, out);
        if (s->parsed())
            return cmd_simulate(sim, out);
        if (p->parsed())
            return cmd_process(proc, out);
        return cmd_eval(ev, out, err);
    } catch (const FormatError& ex) {
        err << "error: " << ex.what() << '\n';
        return kIoError;
    } catch (const IoError& ex) {
        err << "error: " << ex.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& ex) {
        err << "error: " << ex.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kBadArguments;
    }
}

}  // namespace csirad::cli
