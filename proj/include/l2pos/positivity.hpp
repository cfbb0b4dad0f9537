#pragma once

// Pointwise partial-positivity checks on sampled domains: eigenvalue-count
// positivity and uniform eigenvalue-sum positivity of the complex Hessian.

#include <string>

#include "l2pos/multi_index.hpp"
#include "l2pos/weight.hpp"

namespace l2pos::geometry {

struct PositivityReport {
    enum class Criterion { q_positive, uniform_q_positive, rc_trace, rc_directional };

    Criterion criterion;
    int q = 0;
    double c = 0.0;
    // Raw minimum of the checked quantity over all samples; the pass rule is
    // min_value - threshold >= -tolerance. threshold is c for the uniform
    // check (min_value is the raw eigenvalue sum) and 0 elsewhere.
    double min_value = 0.0;
    double threshold = 0.0;
    double tolerance = 0.0;
    Point witness_point;
    core::MultiIndex witness_subset;   // positions in the ascending spectrum
    std::vector<cplx> witness_vector;  // worst bundle vector for rc checks
    std::vector<double> witness_eigenvalues;
    bool pass = false;
    int samples_used = 0;
    std::string note;

    std::string criterion_name() const;
};

inline constexpr double kPositivityTolerance = 1e-9;

// At least n-q positive Hessian eigenvalues at every sample: checks the
// (q+1)-th ascending eigenvalue. Needs 0 <= q <= n-1.
PositivityReport check_q_positive(const Weight& w, int q, const Domain& d, int samples,
                                  double h_step = kDefaultHessianStep);

// Sum of any q distinct Hessian eigenvalues >= c at every sample, i.e. the
// sum of the q smallest >= c. Needs 1 <= q <= n, c >= 0.
PositivityReport check_uniform_q_positive(const Weight& w, int q, double c, const Domain& d,
                                          int samples, double h_step = kDefaultHessianStep);

} // namespace l2pos::geometry
