#pragma once

// Canonical fixture builders shared by the CLI and the test suites.

#include "swclab/embeddings.hpp"
#include "swclab/set_families.hpp"

namespace swclab::fixtures {

// chi([1..m]) for m = 1..n in R^n under linf (the summing-basis chain).
PointSet summing_basis_points(int n);

// The chain above together with the coordinate functionals e_m, theta = 1.
JamesSystem summing_basis_system(int n);

// to_points(block_family(n_max)): the origin plus one 0/1 chain per block.
PointSet block_family_points(int n_max);

// Deterministic net of the l2 ball: even indices on the boundary, odd ones
// uniform inside, all driven by splitmix64(seed).
PointSet l2_ball_net(int dim, int count, uint64_t seed);

// T_n mapped with one fresh coordinate per non-root node into the l2 ball
// gauge: lip_gauge 1, sep_norm 2^{-n/2} wrt the tree metric.
Embedding orthogonal_path_tree_embedding(int n);

// A James chain supported on coordinates [offset, offset + n) of R^dim.
JamesSystem shifted_chain_system(int n, int offset, int dim);

}  // namespace swclab::fixtures
