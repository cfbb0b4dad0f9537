#pragma once

// Dense complex linear algebra for small Hermitian problems: storage,
// a cyclic Jacobi eigensolver, Cholesky solves, and eigenvalue subset sums.

#include <complex>
#include <span>
#include <vector>

#include "l2pos/errors.hpp"

namespace l2pos::core {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<const cplx> data() const { return a_; }
    std::span<cplx> data() { return a_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<cplx> apply(std::span<const cplx> x) const;

    double max_abs() const;
    double frobenius() const;
    bool all_finite() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// n x n Hermitian matrix. Construction symmetrizes the input, (A + A*)/2,
// so finite-difference Hessians that are Hermitian only to truncation error
// come out exactly Hermitian.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(int dim);
    explicit HermitianMatrix(const ComplexMatrix& any);
    static HermitianMatrix diagonal(std::span<const double> entries);

    int dim() const { return mat_.rows(); }
    const cplx& operator()(int i, int j) const { return mat_(i, j); }
    void set(int i, int j, cplx v); // sets (i,j) and mirrors the conjugate
    const ComplexMatrix& matrix() const { return mat_; }

    double max_abs() const { return mat_.max_abs(); }

  private:
    ComplexMatrix mat_;
};

// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and a
// unitary matrix whose columns are the matching eigenvectors.
struct Spectrum {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix unitary;           // column j pairs with eigenvalues[j]

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Cyclic Jacobi on the Hermitian input; converges when the off-diagonal
// Frobenius norm drops below 1e-13 * ||H||_F. Ordering is deterministic:
// ascending eigenvalues, ties kept stable, and each eigenvector scaled so its
// first nonzero component is real positive.
Spectrum eig_hermitian(const HermitianMatrix& h);

// Sum of the q smallest eigenvalues; equals the minimum over all sums of q
// distinct eigenvalues.
double q_smallest_sum(const Spectrum& s, int q);
double q_smallest_sum(std::span<const double> ascending_eigenvalues, int q);

// All C(n,q) sums of q distinct eigenvalues, ascending. Enumeration oracle;
// refuses dim > 12.
std::vector<double> subset_sums_oracle(const Spectrum& s, int q);
std::vector<double> subset_sums_oracle(std::span<const double> eigenvalues, int q);

// Cholesky factorization A = L L* of a Hermitian positive definite matrix.
// Throws DefinitenessError when a pivot fails.
class Cholesky {
  public:
    explicit Cholesky(const ComplexMatrix& hermitian_pd);
    std::vector<cplx> solve(std::span<const cplx> rhs) const;
    int dim() const { return l_.rows(); }

  private:
    ComplexMatrix l_;
};

} // namespace l2pos::core
