#pragma once

#include "hardcore/arith.hpp"
#include "hardcore/contour.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/gibbs.hpp"
#include "hardcore/intlattice.hpp"
#include "hardcore/lattice.hpp"
#include "hardcore/mtriangle.hpp"
#include "hardcore/oracle.hpp"
#include "hardcore/packing.hpp"
#include "hardcore/pgs.hpp"
#include "hardcore/render.hpp"
#include "hardcore/templates.hpp"
#include "hardcore/torus.hpp"
