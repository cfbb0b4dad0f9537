#include "l2pos/multi_index.hpp"

#include <algorithm>

namespace l2pos::core {

bool MultiIndex::contains(int j) const {
    return std::binary_search(indices.begin(), indices.end(), j);
}

std::vector<MultiIndex> multi_indices(int n, int q) {
    if (n < 0 || q < 0 || q > n) throw InputError("multi_indices: need 0 <= q <= n");
    std::vector<MultiIndex> out;
    out.reserve(binomial(n, q));
    MultiIndex cur;
    cur.indices.resize(q);
    if (q == 0) {
        out.push_back(MultiIndex{});
        return out;
    }
    for (int i = 0; i < q; ++i) cur.indices[i] = i + 1;
    while (true) {
        out.push_back(cur);
        int k = q - 1;
        while (k >= 0 && cur.indices[k] == n - q + k + 1) --k;
        if (k < 0) break;
        ++cur.indices[k];
        for (int j = k + 1; j < q; ++j) cur.indices[j] = cur.indices[j - 1] + 1;
    }
    return out;
}

std::uint64_t binomial(int n, int q) {
    if (q < 0 || q > n) return 0;
    q = std::min(q, n - q);
    std::uint64_t r = 1;
    for (int i = 1; i <= q; ++i) r = r * static_cast<std::uint64_t>(n - q + i) / i;
    return r;
}

size_t multi_index_rank(int n, const MultiIndex& m) {
    // Lexicographic rank via counting the tuples that precede m.
    const int q = m.degree();
    std::uint64_t rank = 0;
    int prev = 0;
    for (int pos = 0; pos < q; ++pos) {
        for (int v = prev + 1; v < m.indices[pos]; ++v)
            rank += binomial(n - v, q - pos - 1);
        prev = m.indices[pos];
    }
    return static_cast<size_t>(rank);
}

int insertion_sign(int j, const MultiIndex& k) {
    int below = 0;
    for (int v : k.indices) {
        if (v == j) throw InputError("insertion_sign: index already present");
        if (v < j) ++below;
    }
    return below % 2 == 0 ? 1 : -1;
}

MultiIndex insert_index(int j, const MultiIndex& k) {
    MultiIndex out = k;
    out.indices.insert(std::upper_bound(out.indices.begin(), out.indices.end(), j), j);
    return out;
}

} // namespace l2pos::core
