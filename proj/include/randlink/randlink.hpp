#pragma once

// Umbrella header: random links as braid closures of random walks, with the
// exact combinatorics to verify what the simulations estimate.

#include "randlink/braid.hpp"
#include "randlink/errors.hpp"
#include "randlink/exact.hpp"
#include "randlink/io.hpp"
#include "randlink/numeric.hpp"
#include "randlink/partition.hpp"
#include "randlink/perm.hpp"
#include "randlink/rng.hpp"
#include "randlink/walk.hpp"
