#pragma once

#include "gwave/dynamics/impulse_response.hpp"
#include "gwave/dynamics/modal.hpp"
#include "gwave/dynamics/observations.hpp"
#include "gwave/dynamics/simulate.hpp"
#include "gwave/dynamics/source.hpp"
#include "gwave/dynamics/trajectory.hpp"
