#pragma once

// Families of finite subsets of {1..N}: the Schreier family, the block-chain
// family, bounded-cardinality families, trace counting, polynomial trace
// growth tests, shattered-set extraction and the hand-off to characteristic
// vectors (where chains become separation certificates with theta = 1).

#include <optional>
#include <vector>

#include "swclab/geometry.hpp"

namespace swclab {

struct SetFamily {
    int universe = 0;                    // elements live in [1, universe]
    std::vector<std::vector<int>> sets;  // each sorted ascending; no duplicates

    int size() const { return int(sets.size()); }
};

// {} plus every nonempty F in [1..n] with |F| <= min(F), lexicographic order.
SetFamily schreier(int n);

// {} plus the chains F_{n,m} = (n(n-1)/2, n(n-1)/2 + m] for 1 <= m <= n <= n_max,
// ordered by (n, m); the universe is n_max(n_max+1)/2.
SetFamily block_family(int n_max);
std::vector<int> block_set(int n, int m);  // F_{n,m}

// All subsets of [1..n] of size <= p, lexicographic order.
SetFamily bounded_card_family(int n, int p);

struct TraceResult {
    std::vector<std::vector<int>> traces;  // distinct F cap A, lexicographic
    int count = 0;
};

TraceResult trace_count(const SetFamily& fam, const std::vector<int>& a);

struct TraceTestResult {
    bool pass = true;
    std::vector<int> worst_a;  // the violating sample, when failing
    int worst_count = 0;
    double worst_bound = 0.0;
};

// Checks |{F cap A}| <= C |A|^p on each sample; the empty sample is bounded
// against C itself so that the one-trace family passes for C >= 1.
TraceTestResult polynomial_trace_test(const SetFamily& fam, double p, double c,
                                      const std::vector<std::vector<int>>& samples);

struct ShatterWitness {
    std::vector<int> s;  // the shattered set, ascending
    // one witness per subset of s, in mask order (bit i = s[i] present)
    std::vector<int> witness_family_index;
};

struct VcExtractResult {
    ShatterWitness witness;
    std::vector<int> chain_family_indices;  // F_k with F_k cap S = {s_1..s_k}
    PointSet chain_points;                  // characteristic vectors, linf ambient
    long long subsets_examined = 0;
};

// Maximum-size shattered S inside A by descending-size search (|A| <= 20).
VcExtractResult vc_extract(const SetFamily& fam, const std::vector<int>& a,
                           long long budget = 2'000'000);

struct SlicingFunctional {
    Vec a;               // +1 on F_{n,m}, -1 on the rest of block n, 0 elsewhere
    double level = 0.0;  // m - 1/2
    int target = -1;     // index of chi(F_{n,m}) in to_points(block_family(n_max))
    bool verified = false;  // the slice {y : <a,y> > level} is exactly the target
};

SlicingFunctional slicing_functional(int n, int m, int n_max);

PointSet to_points(const SetFamily& fam, AmbientNorm ambient = AmbientNorm::linf());

}  // namespace swclab
