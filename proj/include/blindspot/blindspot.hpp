#pragma once

#include "blindspot/analytic.hpp"
#include "blindspot/config.hpp"
#include "blindspot/csv.hpp"
#include "blindspot/geometry.hpp"
#include "blindspot/rng.hpp"
#include "blindspot/sampling.hpp"
#include "blindspot/simulator.hpp"
