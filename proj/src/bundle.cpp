#include "l2pos/bundle.hpp"

#include <cmath>

#include "l2pos/sampling.hpp"

namespace l2pos::geometry {

BundleCurvature::BundleCurvature(int n, int r, BlockEvaluator blocks)
    : n_(n), r_(r), blocks_(std::move(blocks)) {
    if (n < 1 || r < 1) throw InputError("BundleCurvature: n and r must be >= 1");
    if (!blocks_) throw InputError("BundleCurvature: block evaluator required");
}

BundleCurvature BundleCurvature::constant(int n, int r, std::vector<core::ComplexMatrix> blocks) {
    if (static_cast<int>(blocks.size()) != n * n)
        throw InputError("BundleCurvature: need n*n blocks");
    for (const auto& b : blocks)
        if (b.rows() != r || b.cols() != r) throw InputError("BundleCurvature: block rank mismatch");
    return BundleCurvature(n, r, [blocks](std::span<const cplx>) { return blocks; });
}

BundleCurvature BundleCurvature::from_weight(const Weight& w, double h_step) {
    const int n = w.n();
    auto eval = [w, n, h_step](std::span<const cplx> z) {
        const HermitianMatrix h = complex_hessian(w, z, h_step);
        std::vector<core::ComplexMatrix> blocks(static_cast<size_t>(n) * n,
                                                core::ComplexMatrix(1, 1));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) blocks[static_cast<size_t>(j) * n + k](0, 0) = h(j, k);
        return blocks;
    };
    return BundleCurvature(n, 1, std::move(eval));
}

std::vector<core::ComplexMatrix> BundleCurvature::blocks_at(std::span<const cplx> z) const {
    if (static_cast<int>(z.size()) != n_) throw InputError("BundleCurvature: point dimension mismatch");
    auto blocks = blocks_(z);
    if (static_cast<int>(blocks.size()) != n_ * n_)
        throw InputError("BundleCurvature: evaluator returned wrong block count");
    double scale = 0.0;
    for (const auto& b : blocks) {
        if (b.rows() != r_ || b.cols() != r_)
            throw InputError("BundleCurvature: evaluator returned wrong block rank");
        scale = std::max(scale, b.max_abs());
    }
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
            const auto& jk = blocks[static_cast<size_t>(j) * n_ + k];
            const auto& kj = blocks[static_cast<size_t>(k) * n_ + j];
            for (int a = 0; a < r_; ++a)
                for (int bi = 0; bi < r_; ++bi)
                    if (std::abs(std::conj(jk(bi, a)) - kj(a, bi)) > 1e-10 * (1.0 + scale))
                        throw InputError("BundleCurvature: blocks violate Hermitian symmetry");
        }
    return blocks;
}

PositivityReport rc_trace_check(const BundleCurvature& b, double c, const Point& z) {
    if (c < 0.0) throw InputError("rc_trace_check: c must be >= 0");
    const auto blocks = b.blocks_at(z);
    const int n = b.n(), r = b.rank();
    core::ComplexMatrix trace_op(r, r);
    for (int j = 0; j < n; ++j) {
        const auto& d = blocks[static_cast<size_t>(j) * n + j];
        for (int a = 0; a < r; ++a)
            for (int bi = 0; bi < r; ++bi) trace_op(a, bi) += d(a, bi);
    }
    const auto spec = core::eig_hermitian(core::HermitianMatrix(trace_op));

    PositivityReport rep;
    rep.criterion = PositivityReport::Criterion::rc_trace;
    rep.q = 0;
    rep.c = c;
    rep.tolerance = kPositivityTolerance;
    rep.min_value = spec.eigenvalues.front() - c;
    rep.witness_point = z;
    rep.witness_eigenvalues = spec.eigenvalues;
    rep.witness_vector.resize(r);
    for (int i = 0; i < r; ++i) rep.witness_vector[i] = spec.unitary(i, 0);
    rep.samples_used = 1;
    rep.pass = rep.min_value >= -rep.tolerance;
    return rep;
}

namespace {

double lambda_max_for_direction(const std::vector<core::ComplexMatrix>& blocks, int n, int r,
                                std::span<const cplx> a) {
    core::ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const auto ta = blocks[static_cast<size_t>(j) * n + k].apply(a);
            cplx acc{};
            for (int i = 0; i < r; ++i) acc += ta[i] * std::conj(a[i]);
            m(j, k) = acc;
        }
    const auto spec = core::eig_hermitian(core::HermitianMatrix(m));
    return spec.eigenvalues.back();
}

void normalize(std::vector<cplx>& a) {
    double s = 0.0;
    for (cplx v : a) s += std::norm(v);
    s = std::sqrt(s);
    if (s > 0.0)
        for (cplx& v : a) v /= s;
}

} // namespace

PositivityReport rc_directional_check(const BundleCurvature& b, const Point& z,
                                      int direction_samples) {
    if (direction_samples < 1) throw InputError("rc_directional_check: need >= 1 sample");
    const auto blocks = b.blocks_at(z);
    const int n = b.n(), r = b.rank();

    core::HaltonSequence halton(2 * r);
    double worst = std::numeric_limits<double>::infinity();
    std::vector<cplx> worst_a;
    for (int s = 0; s < direction_samples; ++s) {
        const auto a = core::unit_sphere_point(halton.next(), r);
        const double lm = lambda_max_for_direction(blocks, n, r, a);
        if (lm < worst) {
            worst = lm;
            worst_a = a;
        }
    }

    // local refinement around the worst sample
    double step = 0.25;
    for (int it = 0; it < 20; ++it) {
        for (int axis = 0; axis < 2 * r; ++axis) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<cplx> cand = worst_a;
                cand[axis / 2] += axis % 2 == 0 ? cplx(dir * step, 0.0) : cplx(0.0, dir * step);
                normalize(cand);
                const double lm = lambda_max_for_direction(blocks, n, r, cand);
                if (lm < worst) {
                    worst = lm;
                    worst_a = cand;
                }
            }
        }
        step *= 0.7;
    }

    PositivityReport rep;
    rep.criterion = PositivityReport::Criterion::rc_directional;
    rep.tolerance = kPositivityTolerance;
    rep.min_value = worst;
    rep.witness_point = z;
    rep.witness_vector = worst_a;
    rep.samples_used = direction_samples;
    rep.note = "sampled certificate";
    rep.pass = rep.min_value >= -rep.tolerance;
    return rep;
}

} // namespace l2pos::geometry
