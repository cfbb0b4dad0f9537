#include "l2pos/monotone.hpp"

namespace l2pos::probes {

using geometry::Domain;
using geometry::Point;
using geometry::Weight;

MonotoneReport monotone_limit_check(const std::vector<Weight>& sequence, const Weight& limit,
                                    int q, double c, const Domain& d, int samples) {
    if (sequence.empty()) throw InputError("monotone_limit_check: empty sequence");
    constexpr double kMonotoneTol = 1e-12;

    const auto pts = d.sample_interior(samples);
    for (const Point& z : pts) {
        double prev = sequence.front()(z);
        for (size_t j = 1; j < sequence.size(); ++j) {
            const double cur = sequence[j](z);
            if (cur > prev + kMonotoneTol)
                throw InputError("monotone_limit_check: sequence not decreasing at a sample");
            prev = cur;
        }
        if (limit(z) > prev + kMonotoneTol)
            throw InputError("monotone_limit_check: limit exceeds the last member at a sample");
    }

    MonotoneReport rep;
    rep.q = q;
    rep.c = c;
    rep.samples_used = static_cast<int>(pts.size());
    rep.members_pass = true;
    for (const Weight& w : sequence) {
        const auto r = geometry::check_uniform_q_positive(w, q, c, d, samples);
        rep.member_minima.push_back(r.min_value);
        rep.members_pass = rep.members_pass && r.pass;
    }
    const auto rl = geometry::check_uniform_q_positive(limit, q, c, d, samples);
    rep.limit_min = rl.min_value;
    rep.limit_pass = rl.pass;
    return rep;
}

} // namespace l2pos::probes
