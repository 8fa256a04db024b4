#pragma once
// Umbrella header: the whole library in one include.

#include "kho/cache.hpp"
#include "kho/complex.hpp"
#include "kho/cube.hpp"
#include "kho/cube_even.hpp"
#include "kho/cube_odd.hpp"
#include "kho/diagram.hpp"
#include "kho/frobenius.hpp"
#include "kho/homology.hpp"
#include "kho/invariants.hpp"
#include "kho/laurent.hpp"
#include "kho/reduce.hpp"
#include "kho/report.hpp"
#include "kho/snf.hpp"
#include "kho/sparse.hpp"
#include "kho/util.hpp"
