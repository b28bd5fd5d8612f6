#pragma once

#include "pdem/boundary.hpp"
#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/interval.hpp"
#include "pdem/intertwine.hpp"
#include "pdem/mass.hpp"
#include "pdem/numerics.hpp"
#include "pdem/ordering.hpp"
#include "pdem/potentials.hpp"
#include "pdem/problem.hpp"
#include "pdem/sl_solver.hpp"
#include "pdem/xform.hpp"
