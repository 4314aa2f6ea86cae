#pragma once

// Umbrella header: exact triples over a real algebraic number field, the
// generalized Delzant construction data, nonrational symplectic reduction,
// and the floating-point verification lab.

#include "toriq/delzant.hpp"
#include "toriq/errors.hpp"
#include "toriq/field.hpp"
#include "toriq/intlinalg.hpp"
#include "toriq/json_io.hpp"
#include "toriq/linalg.hpp"
#include "toriq/numlab.hpp"
#include "toriq/polyhedron.hpp"
#include "toriq/quasilattice.hpp"
#include "toriq/reduction.hpp"
#include "toriq/svg.hpp"
