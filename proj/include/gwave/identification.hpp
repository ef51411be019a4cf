#pragma once

#include "gwave/identification/expansion.hpp"
#include "gwave/identification/legendre.hpp"
#include "gwave/identification/localization.hpp"
#include "gwave/identification/pipeline.hpp"
#include "gwave/identification/reconstruction.hpp"
#include "gwave/identification/residuals.hpp"
