#pragma once

#include "finscheme/element_set.hpp"
#include "finscheme/errors.hpp"
#include "finscheme/report.hpp"
#include "finscheme/ring.hpp"
#include "finscheme/ideal.hpp"
#include "finscheme/hom.hpp"
#include "finscheme/localization.hpp"
#include "finscheme/topology.hpp"
#include "finscheme/sheaf.hpp"
#include "finscheme/spectrum.hpp"
#include "finscheme/limits.hpp"
#include "finscheme/geometry.hpp"
