#pragma once

// Umbrella header for the furthest-hyperplane toolkit.

#include "fhp/approx.hpp"
#include "fhp/cnf.hpp"
#include "fhp/common.hpp"
#include "fhp/core.hpp"
#include "fhp/exact.hpp"
#include "fhp/expander.hpp"
#include "fhp/generators.hpp"
#include "fhp/io.hpp"
#include "fhp/mmc.hpp"
#include "fhp/parallel.hpp"
#include "fhp/reduction.hpp"
#include "fhp/report.hpp"
#include "fhp/rng.hpp"
#include "fhp/study.hpp"
#include "fhp/sym.hpp"
