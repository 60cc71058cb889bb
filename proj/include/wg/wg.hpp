#pragma once

#include "wg/cache.hpp"
#include "wg/combinatorics.hpp"
#include "wg/linmaps.hpp"
#include "wg/matrix.hpp"
#include "wg/moments.hpp"
#include "wg/monomial.hpp"
#include "wg/numeric.hpp"
#include "wg/oracles.hpp"
#include "wg/pairings.hpp"
#include "wg/partition.hpp"
#include "wg/permutation.hpp"
#include "wg/weingarten.hpp"
