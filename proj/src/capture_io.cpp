#include "csirad/capture_io.hpp"

#include "csirad/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <iomanip>
#include <sstream>

namespace csirad {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put_le(std::ostream& out, T value) {
    using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
    const auto bits = std::bit_cast<U>(value);
    std::array<char, sizeof(T)> buf{};
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(buf.data(), buf.size());
}

template <typename T>
T get_le(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        bits |= static_cast<U>(static_cast<U>(p[i]) << (8 * i));
    return std::bit_cast<T>(bits);
}

void write_header(std::ostream& out, const CaptureHeader& h) {
    out.write(CaptureHeader::kMagic, 4);
    put_le(out, h.version);
    put_le(out, h.n_subcarriers);
    put_le(out, h.frames);
    put_le(out, h.carrier_freq_hz);
    put_le(out, h.subcarrier_spacing_hz);
    put_le(out, h.frame_interval_s);
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

WaveformConfig CaptureHeader::config(std::size_t window_frames) const {
    WaveformParams p;
    p.n_subcarriers = n_subcarriers;
    p.n_frames = window_frames;
    p.subcarrier_spacing_hz = subcarrier_spacing_hz;
    p.frame_interval_s = frame_interval_s;
    p.carrier_freq_hz = carrier_freq_hz;
    return WaveformConfig::make(p);
}

CaptureWriter::CaptureWriter(const std::string& path, const WaveformConfig& cfg)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
    if (!out_)
        throw IoError("cannot open '" + path + "' for writing");
    header_.n_subcarriers = static_cast<std::uint32_t>(cfg.n_subcarriers());
    header_.carrier_freq_hz = cfg.carrier_freq();
    header_.subcarrier_spacing_hz = cfg.subcarrier_spacing();
    header_.frame_interval_s = cfg.frame_interval();
    write_header(out_, header_);
}

CaptureWriter::~CaptureWriter() {
    try {
        close();
    } catch (...) {
    }
}

void CaptureWriter::write_frame(std::span<const std::complex<float>> frame) {
    if (frame.size() != header_.n_subcarriers)
        throw std::invalid_argument("write_frame: frame length does not match header");
    for (const auto& v : frame) {
        put_le(out_, v.real());
        put_le(out_, v.imag());
    }
    if (!out_)
        throw IoError("write failed on '" + path_ + "'");
    ++header_.frames;
}

void CaptureWriter::write_frame(std::span<const cplx> frame) {
    CaptureFrame f(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i)
        f[i] = {static_cast<float>(frame[i].real()), static_cast<float>(frame[i].imag())};
    write_frame(std::span<const std::complex<float>>(f));
}

void CaptureWriter::close() {
    if (closed_)
        return;
    closed_ = true;
    out_.seekp(0);
    write_header(out_, header_);
    out_.close();
    if (out_.fail())
        throw IoError("write failed on '" + path_ + "'");
}

CaptureReader::CaptureReader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_)
        throw IoError("cannot open '" + path + "'");
    std::array<unsigned char, CaptureHeader::kSize> buf{};
    in_.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (in_.gcount() < 4 || std::memcmp(buf.data(), CaptureHeader::kMagic, 4) != 0)
        throw FormatError("bad magic in '" + path + "'");
    if (static_cast<std::size_t>(in_.gcount()) != buf.size())
        throw FormatError("truncated header in '" + path + "'");
    header_.version = get_le<std::uint16_t>(buf.data() + 4);
    if (header_.version != CaptureHeader::kVersion)
        throw FormatError("unsupported capture version " + std::to_string(header_.version));
    header_.n_subcarriers = get_le<std::uint32_t>(buf.data() + 6);
    header_.frames = get_le<std::uint32_t>(buf.data() + 10);
    header_.carrier_freq_hz = get_le<double>(buf.data() + 14);
    header_.subcarrier_spacing_hz = get_le<double>(buf.data() + 22);
    header_.frame_interval_s = get_le<double>(buf.data() + 30);
    if (header_.n_subcarriers == 0 || !(header_.carrier_freq_hz > 0.0) || !(header_.subcarrier_spacing_hz > 0.0) ||
        !(header_.frame_interval_s > 0.0))
        throw FormatError("non-positive header field in '" + path + "'");
}

std::optional<CaptureFrame> CaptureReader::next() {
    if (next_ >= header_.frames)
        return std::nullopt;
    const std::size_t bytes = static_cast<std::size_t>(header_.n_subcarriers) * 8;
    std::vector<unsigned char> buf(bytes);
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got != bytes) {
        std::ostringstream msg;
        msg << "truncated payload in '" << path_ << "' at frame " << next_ << ": expected "
            << CaptureHeader::kSize + header_.frames * bytes << " bytes, got " << CaptureHeader::kSize + next_ * bytes + got;
        throw FormatError(msg.str());
    }
    CaptureFrame frame(header_.n_subcarriers);
    for (std::size_t i = 0; i < frame.size(); ++i)
        frame[i] = {get_le<float>(buf.data() + 8 * i), get_le<float>(buf.data() + 8 * i + 4)};
    ++next_;
    return frame;
}

void write_capture(const std::string& path, const WaveformConfig& cfg, const CsiGrid& frames) {
    if (!frames.empty() && frames.cols() != cfg.n_subcarriers())
        throw std::invalid_argument("write_capture: grid width does not match config");
    CaptureWriter w(path, cfg);
    for (std::size_t m = 0; m < frames.rows(); ++m)
        w.write_frame(frames.row(m));
    w.close();
}

Capture read_capture(const std::string& path) {
    CaptureReader reader(path);
    Capture cap{reader.header(), {}};
    std::vector<cplx> row(reader.header().n_subcarriers);
    while (auto frame = reader.next()) {
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = {(*frame)[i].real(), (*frame)[i].imag()};
        cap.frames.append_row(row);
    }
    return cap;
}

Trajectory read_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty ground-truth file '" + path + "'");
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ','))
            cols.push_back(trim(c));
    }
    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name)
                return i;
        throw FormatError("ground truth: missing column '" + name + "'");
    };
    const auto it = index_of("t");
    const auto ir = index_of("range_m");
    const auto iv = index_of("velocity_mps");

    std::vector<Waypoint> pts;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ','))
            fields.push_back(trim(f));
        if (fields.size() < cols.size())
            throw FormatError("ground truth: short row at line " + std::to_string(line_no));
        try {
            pts.push_back({std::stod(fields[it]), std::stod(fields[ir]), std::stod(fields[iv])});
        } catch (const std::logic_error&) {
            throw FormatError("ground truth: non-numeric field at line " + std::to_string(line_no));
        }
        if (pts.size() > 1 && !(pts.back().t > pts[pts.size() - 2].t))
            throw FormatError("ground truth: t is not strictly increasing at line " + std::to_string(line_no));
    }
    if (pts.empty())
        throw FormatError("ground truth: no rows");
    return Trajectory::make(std::move(pts));
}

void write_ground_truth(const std::string& path, const std::vector<TruthRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "t,range_m,velocity_mps\n" << std::setprecision(17);
    for (const auto& r : rows)
        out << r.t << ',' << r.range_m << ',' << r.velocity_mps << '\n';
    if (!out)
        throw IoError("write failed on '" + path + "'");
}

}  // namespace csirad
