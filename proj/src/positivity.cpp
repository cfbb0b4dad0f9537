#include "l2pos/positivity.hpp"

#include <cmath>

namespace l2pos::geometry {

std::string PositivityReport::criterion_name() const {
    switch (criterion) {
        case Criterion::q_positive: return "q_positive";
        case Criterion::uniform_q_positive: return "uniform_q_positive";
        case Criterion::rc_trace: return "rc_trace";
        case Criterion::rc_directional: return "rc_directional";
    }
    return "?";
}

PositivityReport check_q_positive(const Weight& w, int q, const Domain& d, int samples,
                                  double h_step) {
    const int n = w.n();
    if (q < 0 || q >= n) throw InputError("check_q_positive: need 0 <= q <= n-1");
    if (d.n() != n) throw InputError("check_q_positive: domain dimension mismatch");

    PositivityReport rep;
    rep.criterion = PositivityReport::Criterion::q_positive;
    rep.q = q;
    rep.tolerance = kPositivityTolerance;
    rep.min_value = std::numeric_limits<double>::infinity();

    const auto pts = d.sample_interior(samples);
    for (const Point& z : pts) {
        const auto spec = core::eig_hermitian(complex_hessian(w, z, h_step));
        const double lam = spec.eigenvalues[q]; // (q+1)-th ascending
        if (lam < rep.min_value) {
            rep.min_value = lam;
            rep.witness_point = z;
            rep.witness_eigenvalues = spec.eigenvalues;
            rep.witness_subset = core::MultiIndex{{q + 1}};
        }
    }
    rep.samples_used = static_cast<int>(pts.size());
    rep.pass = rep.min_value >= -rep.tolerance;
    return rep;
}

PositivityReport check_uniform_q_positive(const Weight& w, int q, double c, const Domain& d,
                                          int samples, double h_step) {
    const int n = w.n();
    if (q < 1 || q > n) throw InputError("check_uniform_q_positive: need 1 <= q <= n");
    if (c < 0.0) throw InputError("check_uniform_q_positive: c must be >= 0");
    if (d.n() != n) throw InputError("check_uniform_q_positive: domain dimension mismatch");

    PositivityReport rep;
    rep.criterion = PositivityReport::Criterion::uniform_q_positive;
    rep.q = q;
    rep.c = c;
    rep.threshold = c;
    rep.tolerance = kPositivityTolerance;
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.note = "q-smallest-sum convention";

    const auto pts = d.sample_interior(samples);
    for (const Point& z : pts) {
        const auto spec = core::eig_hermitian(complex_hessian(w, z, h_step));
        const double sum = core::q_smallest_sum(spec, q);
        if (sum < rep.min_value) {
            rep.min_value = sum;
            rep.witness_point = z;
            rep.witness_eigenvalues = spec.eigenvalues;
            core::MultiIndex subset;
            for (int i = 1; i <= q; ++i) subset.indices.push_back(i);
            rep.witness_subset = subset;
        }
    }
    rep.samples_used = static_cast<int>(pts.size());
    rep.pass = rep.min_value - rep.threshold >= -rep.tolerance;
    return rep;
}

} // namespace l2pos::geometry
