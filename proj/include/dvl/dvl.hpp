#pragma once

// Everything except the JSON layer (dvl/io.hpp), which needs nlohmann/json.

#include "dvl/complex_rational.hpp"
#include "dvl/embedding.hpp"
#include "dvl/errors.hpp"
#include "dvl/families.hpp"
#include "dvl/hermitian.hpp"
#include "dvl/invariants.hpp"
#include "dvl/kernel.hpp"
#include "dvl/roots.hpp"
#include "dvl/tolerances.hpp"
#include "dvl/verify.hpp"
