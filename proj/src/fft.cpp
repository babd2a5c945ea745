#include "csirad/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace csirad::fft {
namespace {

// FFTW planning is not thread-safe; execution through fftw_execute_dft is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        std::vector<cplx> scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void run(std::span<cplx> data, int sign) {
    if (data.size() < 2)
        return;
    fftw_plan plan = cache().get(data.size(), sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward(std::span<cplx> data) { run(data, FFTW_FORWARD); }
void backward(std::span<cplx> data) { run(data, FFTW_BACKWARD); }

}  // namespace csirad::fft
