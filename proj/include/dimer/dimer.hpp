#pragma once

#include "dimer/builders.hpp"
#include "dimer/errors.hpp"
#include "dimer/graph.hpp"
#include "dimer/io.hpp"
#include "dimer/isomorphism.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"
#include "dimer/nccr.hpp"
#include "dimer/quiver.hpp"
#include "dimer/toric.hpp"
#include "dimer/vec2.hpp"
#include "dimer/zigzag.hpp"
