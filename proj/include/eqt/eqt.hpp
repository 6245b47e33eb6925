//
// eqt.hpp — umbrella header.
//
#pragma once

#include "eqt/geom2d.hpp"
#include "eqt/curves2d.hpp"
#include "eqt/constructions.hpp"
#include "eqt/hyperbolic.hpp"
#include "eqt/ellipse_optics.hpp"
#include "eqt/ovaloid3d.hpp"
#include "eqt/io.hpp"
