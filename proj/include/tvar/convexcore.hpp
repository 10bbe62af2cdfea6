#ifndef TVAR_CONVEXCORE_HPP
#define TVAR_CONVEXCORE_HPP

#include "arith.hpp"
#include "cone.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "polyhedron.hpp"

#endif
