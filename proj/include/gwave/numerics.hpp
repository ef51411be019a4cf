#pragma once

#include "gwave/numerics/eigen.hpp"
#include "gwave/numerics/finite_diff.hpp"
#include "gwave/numerics/linear_solve.hpp"
#include "gwave/numerics/matrix.hpp"
