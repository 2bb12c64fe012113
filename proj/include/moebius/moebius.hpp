#pragma once

// Moebius centering of spherical point sets and canonical edge-tangent
// polytopes: umbrella header.

#include "moebius/centering.hpp"
#include "moebius/errors.hpp"
#include "moebius/horosphere.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/minkowski.hpp"
#include "moebius/models.hpp"
#include "moebius/off_io.hpp"
#include "moebius/pointset_io.hpp"
#include "moebius/polytope.hpp"
#include "moebius/random.hpp"
