#pragma once

// Slice derivations on finite point sets. One engine drives both variants:
// the set derivation removes slices of small norm-diameter, the function
// derivation removes slices of small oscillation of a scalar function. A
// slice of a finite set is exactly a strictly separable subset, so exact mode
// reduces to enumerating small-dissimilarity cliques and testing an LP.

#include <functional>
#include <optional>
#include <vector>

#include "swclab/hulls.hpp"

namespace swclab {

enum class DeriveMode { Exact, Sweep };

struct DeriveOptions {
    DeriveMode mode = DeriveMode::Exact;
    long long budget_cap = 1'000'000;
    // Sweep directions; when empty they are derived per level from the flags.
    std::vector<Vec> directions;
    bool sweep_coordinate_directions = true;
    bool sweep_difference_directions = true;
    int jobs = 1;
};

struct SliceWitness {
    int removed_index = -1;  // index into the original point list
    Vec removed_point;
    HalfSpace halfspace;
    std::vector<int> slice;  // original indices, ascending; slice = K cap H exactly
    double slice_diameter = 0.0;  // norm diameter or f-oscillation of the slice
};

struct DeriveStep {
    std::vector<int> survivors;  // original indices, ascending
    std::vector<SliceWitness> witnesses;
    long long candidates_tested = 0;
};

struct DerivationTrace {
    double eps = 0.0;
    // levels[0] is the full index set; levels[k] survives k derivations
    std::vector<std::vector<int>> levels;
    std::vector<std::vector<SliceWitness>> witnesses;  // one list per transition
    std::optional<int> index;  // n iff levels[n-1] nonempty and levels[n] empty
    bool stagnated = false;    // survivors remained but no slice was removable
    bool truncated = false;    // max_steps reached first
};

// One derivation of the whole set: survivors are the points contained in no
// separable slice of dissimilarity-diameter <= eps. `active` restricts K to a
// subset of original indices (the level being derived).
DeriveStep derive_once_metric(const PointSet& k, const std::vector<int>& active,
                              const std::function<double(int, int)>& dissimilarity, double eps,
                              const DeriveOptions& opt);

DeriveStep derive_once(const PointSet& k, double eps, const DeriveOptions& opt = {});

DerivationTrace dz_index(const PointSet& k, double eps, int max_steps,
                         const DeriveOptions& opt = {});

DerivationTrace derive_function(const PointSet& k, const std::vector<double>& f, double eps,
                                int max_steps, const DeriveOptions& opt = {});

// f(x) = min distance from x to F; checked to be 1-Lipschitz on all pairs of k.
std::vector<double> distance_to_set_function(const PointSet& k, const PointSet& f);

// Independent re-check of a witness against the level it was produced for.
bool verify_witness(const PointSet& k, const std::vector<int>& level, const SliceWitness& w,
                    const std::function<double(int, int)>& dissimilarity, double eps);

}  // namespace swclab
