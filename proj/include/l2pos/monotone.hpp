#pragma once

// Preservation of the uniform eigenvalue-sum condition under pointwise
// decreasing limits: run the check on every member of the sequence and on
// the limit, after validating monotonicity on the sample set.

#include "l2pos/positivity.hpp"

namespace l2pos::probes {

struct MonotoneReport {
    int q = 0;
    double c = 0.0;
    std::vector<double> member_minima; // min q-sum per member, in order
    double limit_min = 0.0;
    bool members_pass = false;
    bool limit_pass = false;
    int samples_used = 0;
};

// Throws InputError if the sequence fails to decrease pointwise (tolerance
// 1e-12) toward the limit at the sampled points.
MonotoneReport monotone_limit_check(const std::vector<geometry::Weight>& sequence,
                                    const geometry::Weight& limit, int q, double c,
                                    const geometry::Domain& d, int samples);

} // namespace l2pos::probes
