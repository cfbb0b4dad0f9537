#pragma once

// Strictly increasing multi-indices for antiholomorphic form degrees, plus the
// antisymmetrization signs used when a single index is merged into an index set.

#include <cstdint>
#include <vector>

#include "l2pos/errors.hpp"

namespace l2pos::core {

// Strictly increasing tuple of integers in [1, n]; degree q = length.
struct MultiIndex {
    std::vector<int> indices;

    int degree() const { return static_cast<int>(indices.size()); }
    bool contains(int j) const;
    bool operator==(const MultiIndex& o) const { return indices == o.indices; }
};

// All strictly increasing q-tuples in [1, n], lexicographic. Length C(n, q);
// q = 0 yields the single empty index.
std::vector<MultiIndex> multi_indices(int n, int q);

// Position of `m` in multi_indices(n, m.degree()).
size_t multi_index_rank(int n, const MultiIndex& m);

std::uint64_t binomial(int n, int q);

// Sign of sorting (j, K) into the increasing tuple K u {j}:
// (-1)^(number of elements of K below j). Zero slots are the caller's concern;
// requires j not in K.
int insertion_sign(int j, const MultiIndex& k);

// K u {j} as an increasing tuple.
MultiIndex insert_index(int j, const MultiIndex& k);

} // namespace l2pos::core
