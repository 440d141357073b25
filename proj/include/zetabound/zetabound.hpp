#pragma once

#include "numerics.hpp"
#include "zeta.hpp"
#include "exp_sums.hpp"
#include "shape_sum.hpp"
#include "bounds.hpp"
#include "optimize.hpp"
#include "verify.hpp"
