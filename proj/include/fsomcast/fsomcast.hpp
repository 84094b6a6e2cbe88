#pragma once

// Umbrella header for the FSO multicast planning library.

#include "fsomcast/errors.hpp"
#include "fsomcast/geometry.hpp"
#include "fsomcast/link.hpp"
#include "fsomcast/sets.hpp"
#include "fsomcast/solvers.hpp"
#include "fsomcast/simulator.hpp"
#include "fsomcast/scenario_io.hpp"
