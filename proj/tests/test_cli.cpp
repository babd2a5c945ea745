#include "csirad/cli.hpp"

#include "csirad/capture_io.hpp"
#include "csirad/exports.hpp"
#include "temp_dir.hpp"

#include "doctest.h"

#include "json.hpp"

#include <fstream>
#include <sstream>

using namespace csirad;
using csirad::testing::slurp;
using csirad::testing::spit;
using csirad::testing::TempDir;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            v.push_back(line);
    return v;
}

std::vector<Detection> detections_in(const std::string& path) {
    std::ifstream in(path);
    return read_detections(in);
}

// Total energy share of the strongest Doppler row, averaged over windows.
double peak_to_total(const std::string& spectrogram_csv) {
    std::ifstream in(spectrogram_csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        std::vector<double> r;
        while (std::getline(ls, cell, ','))
            r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    double acc = 0.0;
    const std::size_t windows = rows.front().size();
    for (std::size_t w = 0; w < windows; ++w) {
        double total = 0, peak = 0;
        for (const auto& r : rows) {
            total += r[w];
            peak = std::max(peak, r[w]);
        }
        acc += peak / total;
    }
    return acc / static_cast<double>(windows);
}

}  // namespace

TEST_CASE("calc prints the waveform figures") {
    const auto r = run({"calc", "--preset", "wifi-ax211"});
    CHECK(r.code == 0);
    CHECK(r.out.find("range_resolution_m    0.9369") != std::string::npos);
    CHECK(r.out.find("velocity_resolution   0.0297") != std::string::npos);
    CHECK(r.out.find("max_range_m           479.6800") != std::string::npos);
    CHECK(r.out.find("+/-0.4759") != std::string::npos);
    CHECK(r.out.find("range_accuracy") == std::string::npos);

    const auto snr = run({"calc", "--preset", "wifi-ax211", "--snr-db", "20"});
    CHECK(snr.out.find("range_accuracy_m      0.0662") != std::string::npos);

    const auto bw = run({"calc", "--bandwidth", "1.499e8"});
    CHECK(bw.code == 0);
    CHECK(bw.out.find("range_resolution_m    1.0000") != std::string::npos);
}

TEST_CASE("calc argument errors") {
    CHECK(run({"calc", "--preset", "nope"}).code == 3);
    CHECK(run({"calc", "--spacing", "312500", "--bandwidth", "1e8"}).code == 3);
    CHECK(run({"calc", "--frames", "abc"}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({}).code == 3);
}

TEST_CASE("simulate is deterministic") {
    TempDir dir;
    const auto a = dir.file("a.csif");
    const auto b = dir.file("b.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", a}).code == 0);
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a + ".truth.csv") == slurp(b + ".truth.csv"));
    CHECK(read_capture(a).header.frames == 156);
    CHECK(lines(slurp(a + ".truth.csv")).size() == 157);

    const auto c = dir.file("c.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "2", "--out", c}).code == 0);
    CHECK(slurp(a) != slurp(c));

    const auto g = dir.file("g.csif");
    REQUIRE(run({"simulate", "--scenario", "gesture", "--seed", "1", "--out", g, "--truth", dir.file("g.csv")}).code ==
            0);
    CHECK(read_capture(g).header.frames == 240);
    CHECK(run({"simulate", "--scenario", dir.file("missing.txt"), "--out", dir.file("x.csif")}).code == 2);
}

TEST_CASE("process and eval on test1") {
    TempDir dir;
    const auto cap = dir.file("t1.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", cap}).code == 0);

    const auto dets = dir.file("d.jsonl");
    const auto spec = dir.file("spec.csv");
    const auto report = dir.file("sync.json");
    const auto maps = dir.file("maps");
    const auto p = run({"process", cap, "--out", dets, "--emit-spectrogram", spec, "--emit-sync-report", report,
                        "--emit-maps", maps});
    REQUIRE(p.code == 0);
    const auto ls = lines(slurp(dets));
    CHECK(ls.size() == 125);
    const auto first = nlohmann::json::parse(ls.front());
    CHECK(first.contains("t"));
    CHECK(first.contains("range_m"));
    CHECK(first.contains("velocity_mps"));
    CHECK(first.contains("power_db"));
    CHECK(first.contains("bin_l"));
    CHECK(first.contains("bin_p"));
    CHECK(nlohmann::json::parse(slurp(report))["l_coarse"] == 2);
    CHECK(std::filesystem::exists(std::filesystem::path(maps) / "map_0000.csv"));
    CHECK(std::filesystem::exists(std::filesystem::path(maps) / "map_0124.pgm"));

    const auto e = run({"eval", "--detections", dets, "--truth", cap + ".truth.csv", "--min-speed", "0.0297"});
    CHECK(e.code == 0);
    CHECK(e.out.find("PASS") != std::string::npos);

    const auto strict = run({"eval", "--detections", dets, "--truth", cap + ".truth.csv", "--max-range-err", "0.0001"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("FAIL") != std::string::npos);

    // byte-identical across runs
    const auto dets2 = dir.file("d2.jsonl");
    REQUIRE(run({"process", cap, "--out", dets2}).code == 0);
    CHECK(slurp(dets) == slurp(dets2));
}

TEST_CASE("process --no-sic is dominated by the coupling cell") {
    TempDir dir;
    const auto cap = dir.file("t1.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", cap}).code == 0);
    const auto dets = dir.file("raw.jsonl");
    REQUIRE(run({"process", cap, "--out", dets, "--no-sic"}).code == 0);
    const auto ds = detections_in(dets);
    REQUIRE(ds.size() == 125);
    for (const auto& d : ds) {
        CHECK(d.bin_l == 0);
        CHECK(d.bin_p == 0);
    }
}

TEST_CASE("process --no-sync smears Doppler energy") {
    TempDir dir;
    const auto cap = dir.file("t1.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", cap}).code == 0);
    const auto synced = dir.file("s.csv");
    const auto unsynced = dir.file("u.csv");
    REQUIRE(run({"process", cap, "--out", dir.file("a.jsonl"), "--emit-spectrogram", synced}).code == 0);
    REQUIRE(run({"process", cap, "--out", dir.file("b.jsonl"), "--emit-spectrogram", unsynced, "--no-sync"}).code ==
            0);
    CHECK(peak_to_total(unsynced) < peak_to_total(synced));
}

TEST_CASE("eval edge cases") {
    TempDir dir;
    const auto truth = dir.file("truth.csv");
    spit(truth, "t,range_m,velocity_mps\n0,0.6,-0.0769\n3.9,0.3,-0.0769\n");
    const auto perfect = dir.file("p.jsonl");
    {
        std::ofstream out(perfect);
        for (double t : {0.5, 1.0, 2.0}) {
            Detection d;
            d.t = t;
            d.range_m = 0.6 - 0.3 * t / 3.9;
            d.velocity_mps = -0.0769;
            out << detection_json(d) << '\n';
        }
    }
    const auto ok = run({"eval", "--detections", perfect, "--truth", truth});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("range_err_m     median 0") != std::string::npos);

    const auto empty = dir.file("e.jsonl");
    spit(empty, "");
    const auto e = run({"eval", "--detections", empty, "--truth", truth});
    CHECK(e.code == 1);
    CHECK(e.err.find("nothing to evaluate") != std::string::npos);

    CHECK(run({"eval", "--detections", dir.file("none.jsonl"), "--truth", truth}).code == 2);
    spit(dir.file("bad.jsonl"), "{not json\n");
    CHECK(run({"eval", "--detections", dir.file("bad.jsonl"), "--truth", truth}).code == 2);
}

TEST_CASE("process rejects bad input files and flags") {
    TempDir dir;
    spit(dir.file("junk.csif"), "XXXXjunkjunkjunkjunkjunkjunkjunkjunkjunkjunk");
    const auto r = run({"process", dir.file("junk.csif")});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad magic") != std::string::npos);
    CHECK(run({"process", dir.file("absent.csif")}).code == 2);

    const auto cap = dir.file("t1.csif");
    REQUIRE(run({"simulate", "--scenario", "test1", "--seed", "1", "--out", cap}).code == 0);
    CHECK(run({"process", cap, "--fft-window", "kaiser"}).code == 3);
    CHECK(run({"process", cap, "--window", "400"}).code == 3);
    CHECK(run({"process", cap, "--delta", "0"}).code == 3);

    const auto bytes = slurp(cap);
    spit(dir.file("cut.csif"), bytes.substr(0, bytes.size() / 2 + 3));
    const auto cut = run({"process", dir.file("cut.csif")});
    CHECK(cut.code == 2);
    CHECK(cut.err.find("truncated") != std::string::npos);
}
