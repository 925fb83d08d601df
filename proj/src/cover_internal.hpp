#pragma once

#include "icr/decomposition.hpp"

namespace icr::detail {

// build_cover_det5 for a full-dimensional 4x4 generator matrix, without the
// final certificate check; subcones stay in the same coordinates.
UnimodularCover build_cover_in_coords(const IntMatrix& r);

}  // namespace icr::detail
