#pragma once

#include "csirad/grid.hpp"

namespace csirad {

/// Zero-Doppler removal: subtracts each subcarrier's complex mean over the
/// window's frames. Cancels Tx/Rx coupling and static clutter. Needs >= 2 frames.
CsiGrid remove_dc(const CsiGrid& csi);

}  // namespace csirad
