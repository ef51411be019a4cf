#pragma once

#include "gwave/detection.hpp"
#include "gwave/dynamics.hpp"
#include "gwave/error.hpp"
#include "gwave/graph.hpp"
#include "gwave/healthy_state.hpp"
#include "gwave/identification.hpp"
#include "gwave/io/csv.hpp"
#include "gwave/numerics.hpp"
#include "gwave/spectral.hpp"
