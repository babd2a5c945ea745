#include "csirad/exports.hpp"

#include "csirad/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace csirad {

void write_map_csv(std::ostream& out, const RangeDopplerMap& map) {
    out << std::setprecision(9) << "velocity_mps\\range_m";
    for (std::size_t l = 0; l < map.range_bins(); ++l)
        out << ',' << static_cast<double>(l) * map.range_scale;
    out << '\n';
    for (std::size_t r = 0; r < map.doppler_bins(); ++r) {
        out << map.doppler_of_row(r) * map.velocity_scale;
        for (std::size_t l = 0; l < map.range_bins(); ++l)
            out << ',' << map.magnitude(r, l);
        out << '\n';
    }
}

void write_map_pgm(std::ostream& out, const RangeDopplerMap& map, double dynamic_range_db) {
    const auto mags = map.magnitudes();
    std::vector<double> db(mags.size());
    std::transform(mags.begin(), mags.end(), db.begin(),
                   [](double m) { return 20.0 * std::log10(std::max(m, 1e-300)); });
    const double hi = *std::max_element(db.begin(), db.end());
    const double lo = std::max(*std::min_element(db.begin(), db.end()), hi - dynamic_range_db);
    const double span = hi > lo ? hi - lo : 1.0;

    const std::size_t w = map.range_bins();
    const std::size_t h = map.doppler_bins();
    out << "P5\n" << w << ' ' << h << "\n255\n";
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t r = h - 1 - i;
        for (std::size_t l = 0; l < w; ++l) {
            const double v = std::clamp((db[r * w + l] - lo) / span, 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
        }
    }
}

std::string detection_json(const Detection& d) {
    nlohmann::ordered_json j;
    j["t"] = d.t;
    j["range_m"] = d.range_m;
    j["velocity_mps"] = d.velocity_mps;
    j["power_db"] = d.power_db;
    j["bin_l"] = d.bin_l;
    j["bin_p"] = d.bin_p;
    return j.dump();
}

void write_detections(std::ostream& out, const std::vector<std::optional<Detection>>& detections) {
    for (const auto& d : detections)
        if (d)
            out << detection_json(*d) << '\n';
}

std::vector<Detection> read_detections(std::istream& in) {
    std::vector<Detection> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            Detection d;
            d.t = j.at("t").get<double>();
            d.range_m = j.at("range_m").get<double>();
            d.velocity_mps = j.at("velocity_mps").get<double>();
            d.power_db = j.value("power_db", 0.0);
            d.bin_l = j.value("bin_l", 0);
            d.bin_p = j.value("bin_p", 0);
            out.push_back(d);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("detections: bad record at line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_profile_csv(std::ostream& out, const DopplerTimeProfile& profile) {
    out << std::setprecision(9) << "velocity_mps\\t_s";
    for (double t : profile.times)
        out << ',' << t;
    out << '\n';
    for (std::size_t r = 0; r < profile.doppler_bins; ++r) {
        out << profile.doppler_of_row(r) * profile.velocity_scale;
        for (std::size_t w = 0; w < profile.windows; ++w)
            out << ',' << profile.at(r, w);
        out << '\n';
    }
}

}  // namespace csirad
