#pragma once

// Umbrella header: the full toolkit for the limit laws of the hierarchy of
// freeness, from set-partition combinatorics to the operator models.

#include "mfree/cauchy.hpp"
#include "mfree/errors.hpp"
#include "mfree/fock.hpp"
#include "mfree/hierarchy_sim.hpp"
#include "mfree/measures.hpp"
#include "mfree/numeric.hpp"
#include "mfree/partitions.hpp"
#include "mfree/polynomial.hpp"
#include "mfree/ratfun.hpp"
