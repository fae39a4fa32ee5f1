#pragma once

#include "arith.hpp"
#include "blocks.hpp"
#include "cache.hpp"
#include "config.hpp"
#include "diagram.hpp"
#include "discriminant.hpp"
#include "enumerate.hpp"
#include "golay.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "registry.hpp"
#include "report.hpp"
#include "series.hpp"
#include "series_io.hpp"
#include "suites.hpp"
#include "tower.hpp"
