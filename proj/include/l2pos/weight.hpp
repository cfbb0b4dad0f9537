#pragma once

// Weight functions phi on domains in C^n (the metric h = e^{-phi}) and their
// complex Hessians, either exact or by central finite differences.

#include <functional>
#include <optional>
#include <span>

#include "l2pos/domain.hpp"
#include "l2pos/expr.hpp"
#include "l2pos/linalg.hpp"

namespace l2pos::geometry {

using core::HermitianMatrix;

inline constexpr double kDefaultHessianStep = 1e-3;

class Weight {
  public:
    enum class DerivMode { exact, finite_difference };

    using Evaluator = std::function<double(std::span<const cplx>)>;
    using HessianEvaluator = std::function<HermitianMatrix(std::span<const cplx>)>;

    Weight(int n, Evaluator eval, DerivMode mode = DerivMode::finite_difference,
           HessianEvaluator exact_hessian = nullptr);

    // phi(z) = sum_jk Q_jk z_j conj(z_k); Hessian identically Q.
    static Weight quadratic(const HermitianMatrix& q);
    // Parsed expression over n complex coordinates (fiber coordinates allowed
    // when m_fiber > 0); exact Hessians via forward-mode differentiation.
    static Weight from_expression(const Expression& e, int n, int m_fiber = 0);

    int n() const { return n_; }
    DerivMode mode() const { return mode_; }
    bool has_exact_hessian() const { return static_cast<bool>(exact_hessian_); }

    double operator()(std::span<const cplx> z) const { return eval_(z); }
    HermitianMatrix exact_hessian(std::span<const cplx> z) const;

    void attach_domain(Domain d) { domain_ = std::move(d); }
    const std::optional<Domain>& domain() const { return domain_; }

    // Weight scaled/shifted by another weight: phi + s*psi (same dimension).
    static Weight combine(const Weight& phi, const Weight& psi, double s);

  private:
    int n_;
    Evaluator eval_;
    DerivMode mode_;
    HessianEvaluator exact_hessian_;
    std::optional<Domain> domain_;
};

// Matrix of second derivatives d^2 phi / dz_j dconj(z_k) at z, symmetrized.
// Dispatches on the weight's derivative mode. In finite-difference mode the
// point must keep a margin of 2*h_step from the attached domain's boundary.
HermitianMatrix complex_hessian(const Weight& w, std::span<const cplx> z,
                                double h_step = kDefaultHessianStep);

// Always uses central differences, regardless of mode (convergence studies).
HermitianMatrix complex_hessian_fd(const Weight& w, std::span<const cplx> z, double h_step);

// For exact-mode weights: spot-check the supplied Hessian against finite
// differences at the given points. Throws InputError on disagreement.
void spot_check_hessian(const Weight& w, std::span<const Point> points,
                        double h_step = kDefaultHessianStep, double tol = 1e-4);

} // namespace l2pos::geometry
