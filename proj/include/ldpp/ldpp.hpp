#pragma once

// Umbrella header.

#include "ldpp/analysis.hpp"
#include "ldpp/enumeration.hpp"
#include "ldpp/json_io.hpp"
#include "ldpp/linalg.hpp"
#include "ldpp/matrix.hpp"
#include "ldpp/optimize.hpp"
#include "ldpp/polytope.hpp"
#include "ldpp/rational.hpp"
#include "ldpp/simplex.hpp"
#include "ldpp/verify.hpp"
