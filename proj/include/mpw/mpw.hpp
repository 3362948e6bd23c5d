#pragma once

// Umbrella header.

#include "mpw/error.hpp"
#include "mpw/scalar.hpp"
#include "mpw/lattice.hpp"
#include "mpw/laurent.hpp"
#include "mpw/ratfunc.hpp"
#include "mpw/root_datum.hpp"
#include "mpw/metaplectic.hpp"
#include "mpw/tau.hpp"
#include "mpw/action.hpp"
#include "mpw/parallel.hpp"
#include "mpw/whittaker.hpp"
#include "mpw/numeric.hpp"
#include "mpw/serialize.hpp"
