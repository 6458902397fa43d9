// Umbrella header.
#pragma once

#include "orbiconf/chain.hpp"
#include "orbiconf/comma.hpp"
#include "orbiconf/config.hpp"
#include "orbiconf/equivariant.hpp"
#include "orbiconf/exact.hpp"
#include "orbiconf/group.hpp"
#include "orbiconf/io.hpp"
#include "orbiconf/linalg.hpp"
#include "orbiconf/maps.hpp"
#include "orbiconf/orbifold.hpp"
#include "orbiconf/simplicial.hpp"
