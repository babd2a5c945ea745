#pragma once

#include "csirad/channel_sim.hpp"
#include "csirad/grid.hpp"
#include "csirad/trajectory.hpp"
#include "csirad/waveform.hpp"

#include <complex>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace csirad {

/// Capture file layout (all little-endian):
///   "CSIF" | u16 version | u32 N | u32 frames | f64 carrier | f64 spacing | f64 interval
/// followed by frames * N entries of (f32 real, f32 imag), frame-major.
struct CaptureHeader {
    static constexpr char kMagic[4] = {'C', 'S', 'I', 'F'};
    static constexpr std::uint16_t kVersion = 1;
    static constexpr std::size_t kSize = 38;

    std::uint16_t version = kVersion;
    std::uint32_t n_subcarriers = 0;
    std::uint32_t frames = 0;
    double carrier_freq_hz = 0.0;
    double subcarrier_spacing_hz = 0.0;
    double frame_interval_s = 0.0;

    /// Waveform with the given slow-time window length.
    WaveformConfig config(std::size_t window_frames) const;
};

using CaptureFrame = std::vector<std::complex<float>>;

/// Streams frames to disk; the frame count in the header is patched on close().
class CaptureWriter {
public:
    CaptureWriter(const std::string& path, const WaveformConfig& cfg);
    ~CaptureWriter();
    CaptureWriter(const CaptureWriter&) = delete;
    CaptureWriter& operator=(const CaptureWriter&) = delete;

    void write_frame(std::span<const cplx> frame);
    void write_frame(std::span<const std::complex<float>> frame);
    void close();

private:
    std::ofstream out_;
    std::string path_;
    CaptureHeader header_;
    bool closed_ = false;
};

/// Holds at most one frame in memory.
class CaptureReader {
public:
    explicit CaptureReader(const std::string& path);

    const CaptureHeader& header() const noexcept { return header_; }
    std::size_t frames_read() const noexcept { return next_; }
    /// Next frame, or empty at end of payload. Throws FormatError on truncation.
    std::optional<CaptureFrame> next();

private:
    std::ifstream in_;
    std::string path_;
    CaptureHeader header_;
    std::size_t next_ = 0;
};

void write_capture(const std::string& path, const WaveformConfig& cfg, const CsiGrid& frames);

struct Capture {
    CaptureHeader header;
    CsiGrid frames;
};

Capture read_capture(const std::string& path);

/// Ground-truth CSV with header `t,range_m,velocity_mps`; t strictly increasing.
Trajectory read_ground_truth(const std::string& path);
void write_ground_truth(const std::string& path, const std::vector<TruthRow>& rows);

}  // namespace csirad
