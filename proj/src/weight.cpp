#include "l2pos/weight.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace l2pos::geometry {

Weight::Weight(int n, Evaluator eval, DerivMode mode, HessianEvaluator exact_hessian)
    : n_(n), eval_(std::move(eval)), mode_(mode), exact_hessian_(std::move(exact_hessian)) {
    if (n < 1) throw InputError("Weight: n must be >= 1");
    if (!eval_) throw InputError("Weight: evaluator required");
    if (mode_ == DerivMode::exact && !exact_hessian_)
        throw InputError("Weight: exact mode requires a Hessian evaluator");
}

Weight Weight::quadratic(const HermitianMatrix& q) {
    const int n = q.dim();
    auto eval = [q](std::span<const cplx> z) {
        double s = 0.0;
        for (int j = 0; j < q.dim(); ++j)
            for (int k = 0; k < q.dim(); ++k) s += (q(j, k) * z[j] * std::conj(z[k])).real();
        return s;
    };
    auto hess = [q](std::span<const cplx>) { return q; };
    return Weight(n, std::move(eval), DerivMode::exact, std::move(hess));
}

Weight Weight::from_expression(const Expression& e, int n, int m_fiber) {
    e.validate(n, m_fiber);
    const int total = n + m_fiber;
    auto eval = [e, total, n](std::span<const cplx> z) {
        if (static_cast<int>(z.size()) != total) throw InputError("Weight: point dimension mismatch");
        return e.eval(z, n);
    };
    auto hess = [e, total, n](std::span<const cplx> z) {
        if (static_cast<int>(z.size()) != total) throw InputError("Weight: point dimension mismatch");
        const D2 d = e.eval_d2(z, n);
        HermitianMatrix h(total);
        for (int j = 0; j < total; ++j)
            for (int k = j; k < total; ++k) {
                const double re = 0.25 * (d.hess(2 * j, 2 * k) + d.hess(2 * j + 1, 2 * k + 1));
                const double im = 0.25 * (d.hess(2 * j, 2 * k + 1) - d.hess(2 * j + 1, 2 * k));
                h.set(j, k, cplx(re, im));
            }
        return h;
    };
    return Weight(total, std::move(eval), DerivMode::exact, std::move(hess));
}

HermitianMatrix Weight::exact_hessian(std::span<const cplx> z) const {
    if (!exact_hessian_) throw InputError("Weight: no exact Hessian available");
    return exact_hessian_(z);
}

Weight Weight::combine(const Weight& phi, const Weight& psi, double s) {
    if (phi.n() != psi.n()) throw InputError("Weight::combine: dimension mismatch");
    auto eval = [phi, psi, s](std::span<const cplx> z) { return phi(z) + s * psi(z); };
    Weight::HessianEvaluator hess;
    Weight::DerivMode mode = Weight::DerivMode::finite_difference;
    if (phi.has_exact_hessian() && psi.has_exact_hessian()) {
        hess = [phi, psi, s](std::span<const cplx> z) {
            const HermitianMatrix a = phi.exact_hessian(z);
            const HermitianMatrix b = psi.exact_hessian(z);
            HermitianMatrix out(a.dim());
            for (int i = 0; i < a.dim(); ++i)
                for (int j = i; j < a.dim(); ++j) out.set(i, j, a(i, j) + s * b(i, j));
            return out;
        };
        mode = Weight::DerivMode::exact;
    }
    Weight w(phi.n(), std::move(eval), mode, std::move(hess));
    if (phi.domain()) w.attach_domain(*phi.domain());
    return w;
}

namespace {

// second partial derivative along real axes a, b (0-based over 2n axes)
double second_partial(const Weight& w, std::span<const cplx> z, int a, int b, double h) {
    std::vector<cplx> p(z.begin(), z.end());
    auto bump = [&p](int axis, double d) {
        cplx& c = p[axis / 2];
        if (axis % 2 == 0)
            c += d;
        else
            c += cplx(0.0, d);
    };
    if (a == b) {
        const double f0 = w(p);
        bump(a, h);
        const double fp = w(p);
        bump(a, -2.0 * h);
        const double fm = w(p);
        return (fp - 2.0 * f0 + fm) / (h * h);
    }
    bump(a, h);
    bump(b, h);
    const double fpp = w(p);
    bump(b, -2.0 * h);
    const double fpm = w(p);
    bump(a, -2.0 * h);
    const double fmm = w(p);
    bump(b, 2.0 * h);
    const double fmp = w(p);
    return (fpp - fpm - fmp + fmm) / (4.0 * h * h);
}

} // namespace

HermitianMatrix complex_hessian_fd(const Weight& w, std::span<const cplx> z, double h_step) {
    if (static_cast<int>(z.size()) != w.n()) throw InputError("complex_hessian: dimension mismatch");
    if (!(h_step > 0.0)) throw InputError("complex_hessian: h_step must be positive");
    const int n = w.n();
    core::ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double dxx = second_partial(w, z, 2 * j, 2 * k, h_step);
            const double dyy = second_partial(w, z, 2 * j + 1, 2 * k + 1, h_step);
            const double dxy = second_partial(w, z, 2 * j, 2 * k + 1, h_step);
            const double dyx = second_partial(w, z, 2 * j + 1, 2 * k, h_step);
            m(j, k) = 0.25 * cplx(dxx + dyy, dxy - dyx);
        }
    }
    return HermitianMatrix(m);
}

HermitianMatrix complex_hessian(const Weight& w, std::span<const cplx> z, double h_step) {
    if (w.mode() == Weight::DerivMode::exact) {
        return w.exact_hessian(z);
    }
    if (w.domain()) {
        Point p(z.begin(), z.end());
        if (w.domain()->boundary_distance(p) < 2.0 * h_step)
            throw InputError("complex_hessian: point too close to the domain boundary");
    }
    return complex_hessian_fd(w, z, h_step);
}

void spot_check_hessian(const Weight& w, std::span<const Point> points, double h_step, double tol) {
    if (!w.has_exact_hessian()) return;
    for (const Point& z : points) {
        const HermitianMatrix exact = w.exact_hessian(z);
        const HermitianMatrix fd = complex_hessian_fd(w, z, h_step);
        double err = 0.0;
        for (int i = 0; i < exact.dim(); ++i)
            for (int j = 0; j < exact.dim(); ++j) err = std::max(err, std::abs(exact(i, j) - fd(i, j)));
        if (err > tol * (1.0 + exact.max_abs()))
            throw InputError("Weight: exact Hessian disagrees with finite differences");
    }
}

} // namespace l2pos::geometry
