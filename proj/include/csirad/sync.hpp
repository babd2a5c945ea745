#pragma once

#include "csirad/grid.hpp"
#include "csirad/waveform.hpp"

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csirad {

struct SyncParams {
    int upsample = 16;                           ///< fine-delay granularity 1/U sample
    double phase_step = std::numbers::pi / 2.0;  ///< quantum of the phase-jump correction
    int history = 5;                             ///< frames averaged into the reference phase
    std::optional<int> max_lag;                  ///< defaults to N/4
    bool average_frames = false;                 ///< sum |C(l)| over all frames instead of frame 0

    /// Throws std::invalid_argument if any field is out of range for N subcarriers.
    void validate(std::size_t n_subcarriers) const;
    int lag_limit(std::size_t n_subcarriers) const;
};

/// Sample-domain form of one frame: normalized inverse DFT along the subcarrier axis.
std::vector<cplx> to_sample_domain(std::span<const cplx> spectrum);

/// argmax_l |sum_i s*(i) r(i + l)| over l in [-max_lag, max_lag], circular indexing.
/// Equal magnitudes resolve to the smaller |l|, then to the negative lag.
int coarse_delay(std::span<const cplx> s_time, std::span<const cplx> r_time, int max_lag);

/// Sub-sample refinement around l_coarse on U-times upsampled sequences; result in
/// samples, a multiple of 1/U within [-1, 1].
double fine_delay(std::span<const cplx> s_time, std::span<const cplx> r_time, int l_coarse, int upsample);

struct DelayEstimate {
    int coarse = 0;
    double fine = 0.0;
    double effective() const noexcept { return static_cast<double>(coarse) + fine; }
};

/// Delay of `received` against the known symbols (frame 0, or all frames when averaging).
DelayEstimate estimate_delay(const SymbolGrid& symbols, const CsiGrid& received, const SyncParams& params);

/// Row-wise D(m, n) * e^{+j2π n l_eff / N}.
CsiGrid compensate_delay(const CsiGrid& csi, double l_eff);

/// Angle of the row mean in (-π, π]; empty when the mean vanishes.
std::optional<double> frame_phase(const CsiGrid& csi, std::size_t m);

struct SyncReport {
    int l_coarse = 0;
    double l_fine = 0.0;
    double l_eff = 0.0;
    std::vector<double> theta;    ///< raw frame phases
    std::vector<double> fix;      ///< applied corrections, integer multiples of phase_step
    std::vector<double> phi;      ///< reference phase used for each frame
    std::vector<bool> flagged;    ///< frames whose phase was undefined
    double phase_step = 0.0;
};

struct AlignedCsi {
    CsiGrid grid;
    SyncReport report;  ///< delay fields left at zero
};

/// Sequential frame-phase alignment: frame 0 is the reference; every later frame is
/// rotated by the multiple of phase_step nearest to (reference - own phase).
AlignedCsi align_phases(const CsiGrid& csi, const SyncParams& params);

/// Delay estimate, delay compensation and phase alignment of a full capture.
AlignedCsi synchronize(const CsiGrid& csi, const SymbolGrid& symbols, const CsiGrid& received,
                       const SyncParams& params);

std::string to_json(const SyncReport& report);

}  // namespace csirad
