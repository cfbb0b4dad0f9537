#pragma once

// Curvature tensors of Hermitian vector bundles over domains in C^n, given as
// pointwise blocks Theta_{j k-bar} (r x r), and the trace / directional
// positivity checks on them.

#include <functional>

#include "l2pos/positivity.hpp"

namespace l2pos::geometry {

class BundleCurvature {
  public:
    // blocks(z) returns n*n matrices, row-major in (j,k), each r x r.
    using BlockEvaluator = std::function<std::vector<core::ComplexMatrix>(std::span<const cplx>)>;

    BundleCurvature(int n, int r, BlockEvaluator blocks);

    // Constant curvature tensor from given blocks.
    static BundleCurvature constant(int n, int r, std::vector<core::ComplexMatrix> blocks);
    // Rank-1 curvature of a line-bundle weight: Theta_{jk} = Hessian entry.
    static BundleCurvature from_weight(const Weight& w, double h_step = kDefaultHessianStep);

    int n() const { return n_; }
    int rank() const { return r_; }

    // Evaluate all blocks; validates Theta_{jk}^* = Theta_{kj} to 1e-10.
    std::vector<core::ComplexMatrix> blocks_at(std::span<const cplx> z) const;

  private:
    int n_, r_;
    BlockEvaluator blocks_;
};

// lambda_min( sum_j Theta_{jj}(z) ) - c as min_value; passing certifies
// tr(i Theta a, a) >= c |a|^2 for every bundle vector a at z.
PositivityReport rc_trace_check(const BundleCurvature& b, double c, const Point& z);

// Sampled check that every unit a in C^r admits a direction with positive
// curvature: min over sampled a of lambda_max(M_a), (M_a)_{jk} = <Theta_{jk} a, a>.
// Low-discrepancy sphere samples refined by 20 rounds of coordinate descent
// around the worst one; reported as a sampled certificate, not a proof.
PositivityReport rc_directional_check(const BundleCurvature& b, const Point& z,
                                      int direction_samples);

} // namespace l2pos::geometry
