#pragma once

// Coefficient algebra of (n,q)-forms dz_1^...^dz_n ^ dzbar_I (x) e, with the
// curvature commutator operator in bidegree (n,q), its twisted positive
// variant, and positive-definite solves against it. Monomial coefficients are
// orthonormal in the pointwise inner product.

#include <string>

#include "l2pos/linalg.hpp"
#include "l2pos/multi_index.hpp"

namespace l2pos::forms {

using core::cplx;
using core::ComplexMatrix;
using core::HermitianMatrix;
using core::MultiIndex;

// Coefficients of an (n,q)-form with values in a rank-r bundle, indexed by
// the lexicographic multi-index list (rank index minor). Zeros are stored.
struct FormNQ {
    int n = 0, q = 0, r = 1;
    std::vector<cplx> coef; // size C(n,q) * r, layout [multi_index_rank * r + rho]

    static FormNQ zero(int n, int q, int r = 1);
    static FormNQ basis(int n, int q, int r, size_t index_rank, int rho);

    size_t coefficient_count() const { return coef.size(); }
    cplx& at(size_t index_rank, int rho) { return coef[index_rank * r + rho]; }
    const cplx& at(size_t index_rank, int rho) const { return coef[index_rank * r + rho]; }

    double norm2() const;

    std::string to_json() const;
    static FormNQ from_json(const std::string& text);
};

// Hermitian operator on flattened FormNQ coefficients.
struct OperatorNQ {
    int n = 0, q = 0, r = 1;
    HermitianMatrix mat{1};

    int dim() const { return mat.dim(); }
    FormNQ apply(const FormNQ& f) const;

    std::string to_json() const;
    static OperatorNQ from_json(const std::string& text);
};

// Evaluates the commutator quadratic form
//   Q(f) = sum_{j,k} sum_{|K|=q-1} <Theta_{jk} f_{jK}, f_{kK}>
// with f_{jK} the sign-antisymmetric extension of the coefficients. The
// (j,K) -> (sign, index) tables are built once per (n,q).
class CommutatorForm {
  public:
    CommutatorForm(int n, int q);

    int n() const { return n_; }
    int q() const { return q_; }

    // rank-1 version, theta a plain Hermitian matrix
    double quadratic(std::span<const cplx> f, const HermitianMatrix& theta) const;
    // bundle version, blocks row-major in (j,k), each r x r
    double quadratic(std::span<const cplx> f, const std::vector<ComplexMatrix>& blocks,
                     int r) const;

  private:
    struct Entry {
        int j;       // 1-based inserted index
        double sign; // insertion sign into K
        size_t index_rank;
    };
    int n_, q_;
    std::vector<std::vector<Entry>> per_k_; // one row per K in multi_indices(n, q-1)
};

// The curvature commutator operator on (n,q)-forms, assembled by polarizing
// the quadratic form above. For diagonal theta = diag(gamma) the result is
// diagonal with entry sum_{k in I} gamma_k on multi-index I.
OperatorNQ commutator_operator(const HermitianMatrix& theta, int q);
OperatorNQ commutator_operator(const std::vector<ComplexMatrix>& blocks, int n, int r, int q);

// commutator_operator(hessian_of_psi, q) + c * identity, checked positive
// definite. Throws DefinitenessError otherwise.
OperatorNQ twist_operator(const HermitianMatrix& hessian_psi, double c, int q);

// Solve A g = f for positive definite A; residual bounded by 1e-10 * |f|.
FormNQ apply_inverse(const OperatorNQ& a, const FormNQ& f);

} // namespace l2pos::forms
