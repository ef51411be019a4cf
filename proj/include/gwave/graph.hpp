#pragma once

#include "gwave/graph/graph.hpp"
#include "gwave/graph/observation_sets.hpp"
