#pragma once

#include "psds/systems.hpp"

namespace psds {

/// Rotates coordinates so that in the new frame H_x(0,0,0) = 0 and
/// H_y(0,0,0) > 0, conjugating fields, surface, and reset curve by the same
/// orthogonal map. Systems already in that frame are returned unchanged.
/// Throws ZeroGradient when the surface gradient at the origin is below 1e-12.
SystemSpec rotate_to_normal_form(const SystemSpec& spec);

}  // namespace psds
