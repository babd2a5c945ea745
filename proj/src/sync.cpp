#include "csirad/sync.hpp"

#include "csirad/fft.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csirad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double a) {
    a = std::remainder(a, kTwoPi);
    return a <= -std::numbers::pi ? a + kTwoPi : a;
}

std::size_t circ(long i, std::size_t n) {
    const auto len = static_cast<long>(n);
    return static_cast<std::size_t>(((i % len) + len) % len);
}

// |sum_i a*(i) b(i + shift)| with circular indexing.
double correlation_at(std::span<const cplx> a, std::span<const cplx> b, long shift) {
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[circ(static_cast<long>(i) + shift, b.size())];
    return std::abs(acc);
}

// Visits lags 0, -1, +1, -2, +2, ... and keeps the first strict maximum, which
// realizes the tie-breaking rule.
template <typename Score>
long best_lag(long limit, Score score) {
    long best = 0;
    double best_val = score(0);
    for (long k = 1; k <= limit; ++k) {
        for (long lag : {-k, k}) {
            const double v = score(lag);
            if (v > best_val * (1.0 + 1e-12)) {
                best = lag;
                best_val = v;
            }
        }
    }
    return best;
}

void require_signal(std::span<const cplx> s, std::span<const cplx> r) {
    if (s.size() != r.size() || s.empty())
        throw std::invalid_argument("delay estimate: sequences must be non-empty and equally long");
    const auto nonzero = [](std::span<const cplx> x) {
        return std::any_of(x.begin(), x.end(), [](const cplx& v) { return v != cplx{}; });
    };
    if (!nonzero(s) || !nonzero(r))
        throw std::invalid_argument("delay estimate: all-zero input has no correlation peak");
}

// Places the spectrum of x on bins [0, N) of an N*U grid, matching the
// subcarrier indexing of the LTF, so a delay of d samples becomes an exact
// shift of d*U upsampled samples.
std::vector<cplx> upsample(std::span<const cplx> x, int factor) {
    std::vector<cplx> spec(x.begin(), x.end());
    fft::forward(spec);
    std::vector<cplx> up(x.size() * static_cast<std::size_t>(factor));
    std::copy(spec.begin(), spec.end(), up.begin());
    fft::backward(up);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : up)
        v *= scale;
    return up;
}

}  // namespace

void SyncParams::validate(std::size_t n) const {
    if (upsample < 1)
        throw std::invalid_argument("sync: upsample factor must be >= 1");
    if (!(phase_step > 0.0 && phase_step <= std::numbers::pi))
        throw std::invalid_argument("sync: phase step must lie in (0, pi]");
    if (history < 1)
        throw std::invalid_argument("sync: history length must be >= 1");
    const int lag = lag_limit(n);
    if (lag < 0 || static_cast<std::size_t>(lag) >= n)
        throw std::invalid_argument("sync: max lag must satisfy 0 <= L < N");
}

int SyncParams::lag_limit(std::size_t n) const { return max_lag.value_or(static_cast<int>(n / 4)); }

std::vector<cplx> to_sample_domain(std::span<const cplx> spectrum) {
    std::vector<cplx> out(spectrum.begin(), spectrum.end());
    fft::backward(out);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out)
        v *= scale;
    return out;
}

int coarse_delay(std::span<const cplx> s_time, std::span<const cplx> r_time, int max_lag) {
    require_signal(s_time, r_time);
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= s_time.size())
        throw std::invalid_argument("coarse_delay: max lag must satisfy 0 <= L < N");
    return static_cast<int>(best_lag(max_lag, [&](long l) { return correlation_at(s_time, r_time, l); }));
}

double fine_delay(std::span<const cplx> s_time, std::span<const cplx> r_time, int l_coarse, int upsample_factor) {
    require_signal(s_time, r_time);
    if (upsample_factor < 1)
        throw std::invalid_argument("fine_delay: upsample factor must be >= 1");
    if (upsample_factor == 1)
        return 0.0;
    const auto s_up = upsample(s_time, upsample_factor);
    const auto r_up = upsample(r_time, upsample_factor);
    const long base = static_cast<long>(l_coarse) * upsample_factor;
    const long l = best_lag(upsample_factor, [&](long k) { return correlation_at(s_up, r_up, base + k); });
    return static_cast<double>(l) / upsample_factor;
}

DelayEstimate estimate_delay(const SymbolGrid& symbols, const CsiGrid& received, const SyncParams& params) {
    if (symbols.cols() != received.cols() || received.rows() == 0)
        throw std::invalid_argument("estimate_delay: symbol/received shape mismatch");
    const std::size_t n = received.cols();
    params.validate(n);
    const auto s_time = to_sample_domain(symbols.sequence());

    if (!params.average_frames) {
        const auto r_time = to_sample_domain(received.row(0));
        DelayEstimate est;
        est.coarse = coarse_delay(s_time, r_time, params.lag_limit(n));
        est.fine = fine_delay(s_time, r_time, est.coarse, params.upsample);
        return est;
    }

    // Non-coherent sum of |C(l)| over frames; robust to per-frame phase jumps.
    std::vector<std::vector<cplx>> frames;
    for (std::size_t m = 0; m < received.rows(); ++m)
        frames.push_back(to_sample_domain(received.row(m)));
    require_signal(s_time, frames.front());
    DelayEstimate est;
    est.coarse = static_cast<int>(best_lag(params.lag_limit(n), [&](long l) {
        double acc = 0.0;
        for (const auto& f : frames)
            acc += correlation_at(s_time, f, l);
        return acc;
    }));
    if (params.upsample > 1) {
        const auto s_up = upsample(s_time, params.upsample);
        std::vector<std::vector<cplx>> ups;
        for (const auto& f : frames)
            ups.push_back(upsample(f, params.upsample));
        const long base = static_cast<long>(est.coarse) * params.upsample;
        const long l = best_lag(params.upsample, [&](long k) {
            double acc = 0.0;
            for (const auto& f : ups)
                acc += correlation_at(s_up, f, base + k);
            return acc;
        });
        est.fine = static_cast<double>(l) / params.upsample;
    }
    return est;
}

CsiGrid compensate_delay(const CsiGrid& csi, double l_eff) {
    CsiGrid out = csi;
    if (l_eff == 0.0)
        return out;
    const std::size_t n_sub = csi.cols();
    std::vector<cplx> ramp(n_sub);
    for (std::size_t n = 0; n < n_sub; ++n)
        ramp[n] = std::polar(1.0, kTwoPi * static_cast<double>(n) * l_eff / static_cast<double>(n_sub));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(csi.rows()); ++mi) {
        auto row = out.row(static_cast<std::size_t>(mi));
        for (std::size_t n = 0; n < n_sub; ++n)
            row[n] *= ramp[n];
    }
    return out;
}

std::optional<double> frame_phase(const CsiGrid& csi, std::size_t m) {
    if (m >= csi.rows())
        throw std::out_of_range("frame_phase: frame index out of range");
    cplx sum{};
    double mag = 0.0;
    for (const auto& v : csi.row(m)) {
        sum += v;
        mag += std::abs(v);
    }
    if (mag == 0.0 || std::abs(sum) <= 1e-12 * mag)
        return std::nullopt;
    return wrap_phase(std::arg(sum));
}

AlignedCsi align_phases(const CsiGrid& csi, const SyncParams& params) {
    params.validate(std::max<std::size_t>(csi.cols(), 2));
    const std::size_t rows = csi.rows();
    AlignedCsi out{csi, {}};
    auto& rep = out.report;
    rep.phase_step = params.phase_step;
    rep.theta.resize(rows);
    rep.fix.assign(rows, 0.0);
    rep.phi.resize(rows);
    rep.flagged.assign(rows, false);
    if (rows == 0)
        return out;

    std::vector<double> corrected(rows);
    const auto first = frame_phase(csi, 0);
    rep.flagged[0] = !first;
    rep.theta[0] = first.value_or(0.0);
    rep.phi[0] = rep.theta[0];
    corrected[0] = rep.theta[0];

    const auto history = static_cast<std::size_t>(params.history);
    for (std::size_t m = 1; m < rows; ++m) {
        const std::size_t h = std::min(m, history);
        cplx ref{};
        for (std::size_t i = m - h; i < m; ++i)
            ref += std::polar(1.0, corrected[i]);
        const double phi = std::arg(ref);

        const auto theta = frame_phase(csi, m);
        rep.flagged[m] = !theta;
        rep.theta[m] = theta.value_or(corrected[m - 1]);
        rep.phi[m] = phi;

        const double delta = wrap_phase(phi - rep.theta[m]);
        const double fix = std::round(delta / params.phase_step) * params.phase_step;
        rep.fix[m] = fix;
        corrected[m] = wrap_phase(rep.theta[m] + fix);
        if (fix != 0.0) {
            const cplx rot = std::polar(1.0, fix);
            for (auto& v : out.grid.row(m))
                v *= rot;
        }
    }
    return out;
}

AlignedCsi synchronize(const CsiGrid& csi, const SymbolGrid& symbols, const CsiGrid& received,
                       const SyncParams& params) {
    const auto delay = estimate_delay(symbols, received, params);
    auto aligned = align_phases(compensate_delay(csi, delay.effective()), params);
    aligned.report.l_coarse = delay.coarse;
    aligned.report.l_fine = delay.fine;
    aligned.report.l_eff = delay.effective();
    return aligned;
}

std::string to_json(const SyncReport& r) {
    nlohmann::ordered_json j;
    j["l_coarse"] = r.l_coarse;
    j["l_fine"] = r.l_fine;
    j["l_eff"] = r.l_eff;
    j["phase_step"] = r.phase_step;
    j["theta"] = r.theta;
    j["phi"] = r.phi;
    j["fix"] = r.fix;
    j["flagged"] = r.flagged;
    return j.dump();
}

}  // namespace csirad
