#include "l2pos/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace l2pos::core {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

} // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("matrix product: dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
    if (static_cast<int>(x.size()) != cols_) throw InputError("matrix apply: dimension mismatch");
    std::vector<cplx> y(rows_);
    for (int i = 0; i < rows_; ++i) {
        cplx acc{};
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](cplx v) { return finite(v); });
}

HermitianMatrix::HermitianMatrix(int dim) : mat_(dim, dim) {
    if (dim < 1) throw InputError("HermitianMatrix: dim must be >= 1");
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& any) : mat_(any.rows(), any.cols()) {
    if (any.rows() != any.cols() || any.rows() < 1)
        throw InputError("HermitianMatrix: input must be square, dim >= 1");
    if (!any.all_finite()) throw InputError("HermitianMatrix: non-finite entries");
    const int n = any.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mat_(i, j) = 0.5 * (any(i, j) + std::conj(any(j, i)));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
    HermitianMatrix h(static_cast<int>(entries.size()));
    for (size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(entries[i])) throw InputError("HermitianMatrix: non-finite entries");
        h.mat_(static_cast<int>(i), static_cast<int>(i)) = entries[i];
    }
    return h;
}

void HermitianMatrix::set(int i, int j, cplx v) {
    mat_(i, j) = v;
    mat_(j, i) = std::conj(v);
    if (i == j) mat_(i, i) = v.real();
}

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a in place and
// accumulates the rotation into v (v <- v * J).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const cplx apq = a(p, q);
    const double beta = std::abs(apq);
    if (beta == 0.0) return;
    const cplx phase = apq / beta;
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();

    const double theta = (gamma - alpha) / (2.0 * beta);
    const double sign = theta >= 0.0 ? 1.0 : -1.0;
    const double t = sign / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx s = (t * c) * phase;

    const int n = a.rows();
    // columns: A <- A J with J[p][p]=c, J[p][q]=s, J[q][p]=-conj(s), J[q][q]=c
    for (int i = 0; i < n; ++i) {
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - std::conj(s) * aiq;
        a(i, q) = s * aip + c * aiq;
    }
    // rows: A <- J* A
    for (int j = 0; j < n; ++j) {
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - s * aqj;
        a(q, j) = std::conj(s) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (int i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - std::conj(s) * viq;
        v(i, q) = s * vip + c * viq;
    }
}

void normalize_column_phase(ComplexMatrix& u, int col) {
    const int n = u.rows();
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(u(i, col));
        if (m > 1e-12) {
            const cplx ph = std::conj(u(i, col)) / m;
            for (int k = 0; k < n; ++k) u(k, col) *= ph;
            return;
        }
    }
}

} // namespace

Spectrum eig_hermitian(const HermitianMatrix& h) {
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    if (!a.all_finite()) throw InputError("eig_hermitian: non-finite entries");
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius();
    const double tol = 1e-13 * scale;
    if (scale > 0.0) {
        constexpr int kMaxSweeps = 64;
        int sweep = 0;
        while (off_diagonal_frobenius(a) > tol) {
            if (++sweep > kMaxSweeps) throw SolverError("eig_hermitian: Jacobi sweeps exhausted");
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q)
                    if (std::abs(a(p, q)) > 1e-18 * scale) jacobi_rotate(a, v, p, q);
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.unitary = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        s.eigenvalues[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) s.unitary(i, j) = v(i, order[j]);
        normalize_column_phase(s.unitary, j);
    }
    return s;
}

double q_smallest_sum(std::span<const double> ascending, int q) {
    const int n = static_cast<int>(ascending.size());
    if (q < 1 || q > n) throw InputError("q_smallest_sum: q out of range");
    double s = 0.0;
    for (int i = 0; i < q; ++i) s += ascending[i];
    return s;
}

double q_smallest_sum(const Spectrum& s, int q) { return q_smallest_sum(s.eigenvalues, q); }

std::vector<double> subset_sums_oracle(std::span<const double> eigenvalues, int q) {
    const int n = static_cast<int>(eigenvalues.size());
    if (n > 12) throw InputError("subset_sums_oracle: dim > 12 refused (combinatorial blowup)");
    if (q < 1 || q > n) throw InputError("subset_sums_oracle: q out of range");
    std::vector<double> sums;
    std::vector<int> idx(q);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        double s = 0.0;
        for (int i : idx) s += eigenvalues[i];
        sums.push_back(s);
        int k = q - 1;
        while (k >= 0 && idx[k] == n - q + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(sums.begin(), sums.end());
    return sums;
}

std::vector<double> subset_sums_oracle(const Spectrum& s, int q) {
    return subset_sums_oracle(s.eigenvalues, q);
}

Cholesky::Cholesky(const ComplexMatrix& a) : l_(a.rows(), a.cols()) {
    const int n = a.rows();
    if (a.cols() != n) throw InputError("Cholesky: matrix must be square");
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
    for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) {
            cplx sum = a(i, j);
            for (int k = 0; k < j; ++k) sum -= l_(i, k) * std::conj(l_(j, k));
            if (i == j) {
                const double d = sum.real();
                if (d <= 1e-14 * std::max(max_diag, 1e-300))
                    throw DefinitenessError("Cholesky: matrix is not positive definite");
                l_(j, j) = std::sqrt(d);
            } else {
                l_(i, j) = sum / l_(j, j).real();
            }
        }
    }
}

std::vector<cplx> Cholesky::solve(std::span<const cplx> rhs) const {
    const int n = l_.rows();
    if (static_cast<int>(rhs.size()) != n) throw InputError("Cholesky::solve: size mismatch");
    std::vector<cplx> y(rhs.begin(), rhs.end());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) y[i] -= l_(i, k) * y[k];
        y[i] /= l_(i, i).real();
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) y[i] -= std::conj(l_(k, i)) * y[k];
        y[i] /= l_(i, i).real();
    }
    return y;
}

} // namespace l2pos::core
