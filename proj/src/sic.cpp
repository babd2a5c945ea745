#include "csirad/sic.hpp"

#include <stdexcept>

namespace csirad {

CsiGrid remove_dc(const CsiGrid& csi) {
    if (csi.rows() < 2)
        throw std::invalid_argument("remove_dc: need at least 2 frames");
    CsiGrid out = csi;
    const std::size_t rows = csi.rows();
    const double inv = 1.0 / static_cast<double>(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ni = 0; ni < static_cast<std::ptrdiff_t>(csi.cols()); ++ni) {
        const auto n = static_cast<std::size_t>(ni);
        cplx mean{};
        for (std::size_t m = 0; m < rows; ++m)
            mean += csi(m, n);
        mean *= inv;
        for (std::size_t m = 0; m < rows; ++m)
            out(m, n) -= mean;
    }
    return out;
}

}  // namespace csirad
