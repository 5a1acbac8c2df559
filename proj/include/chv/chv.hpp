#pragma once

// umbrella header

#include "chv/context.hpp"
#include "chv/geometry.hpp"
#include "chv/groebner.hpp"
#include "chv/hyperplane.hpp"
#include "chv/ideal.hpp"
#include "chv/idealops.hpp"
#include "chv/imagegraph.hpp"
#include "chv/lca.hpp"
#include "chv/matrix.hpp"
#include "chv/monomial.hpp"
#include "chv/oracle.hpp"
#include "chv/orbits.hpp"
#include "chv/order.hpp"
#include "chv/parser.hpp"
#include "chv/polynomial.hpp"
#include "chv/problem.hpp"
#include "chv/runner.hpp"
#include "chv/solver.hpp"
#include "chv/stats.hpp"
