// Independent exhaustive enumerators producing f_{n,k} tables for small n.
// These never touch the generating-function machinery; they generate the
// combinatorial objects directly and evaluate the statistic, using the same
// conventions as the catalog (return counting, contact offsets, start-point
// inclusion).
#pragma once

#include <vector>

#include "qgibbs/bivariate_table.hpp"
#include "qgibbs/models.hpp"

namespace qgibbs {

// Largest size index brute_table accepts for this model.
long brute_limit(const ModelId& id);

// Exact counts by direct generation. Throws std::overflow_error above
// brute_limit (explicit refusal, never silent truncation).
BivariateTable brute_table(const ModelId& id, long max_n);

// true iff no index triple of perm is order-isomorphic to the pattern
// (132, 213 or 321). perm must be a permutation of 1..n.
bool avoids(const std::vector<int>& perm, int pattern);

// walkers[i] is the height sequence of walker i (equal lengths, increasing
// start heights). true iff no two walkers share a lattice point at any time
// and, when wall is set, the lowest walker stays >= 0.
bool vicious_ok(const std::vector<std::vector<int>>& walkers, bool wall);

// Friendly two-watermelon predicate: the walkers may meet and share edges
// but not cross (upper stays >= lower throughout).
bool friendly_ok(const std::vector<int>& upper, const std::vector<int>& lower);

// Independent quarter-plane oracle by dynamic programming over positions
// (not via the paired-excursion construction). Counts fit in 64 bits up to
// length 16 for every kind. Used where direct generation is out of reach
// (king walks of length 16 number ~7e11).
BivariateTable quarter_plane_dp_table(const ModelId& id, long max_n);

}  // namespace qgibbs
