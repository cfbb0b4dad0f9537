#include "l2pos/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

namespace l2pos::forms {

using core::binomial;
using core::insert_index;
using core::insertion_sign;
using core::multi_index_rank;
using core::multi_indices;

FormNQ FormNQ::zero(int n, int q, int r) {
    if (n < 1 || q < 0 || q > n || r < 1) throw InputError("FormNQ: bad (n, q, r)");
    FormNQ f;
    f.n = n;
    f.q = q;
    f.r = r;
    f.coef.assign(static_cast<size_t>(binomial(n, q)) * r, cplx{});
    return f;
}

FormNQ FormNQ::basis(int n, int q, int r, size_t index_rank, int rho) {
    FormNQ f = zero(n, q, r);
    f.at(index_rank, rho) = 1.0;
    return f;
}

double FormNQ::norm2() const {
    double s = 0.0;
    for (cplx v : coef) s += std::norm(v);
    return s;
}

FormNQ OperatorNQ::apply(const FormNQ& f) const {
    if (f.n != n || f.q != q || f.r != r) throw InputError("OperatorNQ::apply: shape mismatch");
    FormNQ out = f;
    out.coef = mat.matrix().apply(f.coef);
    return out;
}

CommutatorForm::CommutatorForm(int n, int q) : n_(n), q_(q) {
    if (q < 1 || q > n) throw InputError("CommutatorForm: need 1 <= q <= n");
    const auto ks = multi_indices(n, q - 1);
    per_k_.resize(ks.size());
    for (size_t ki = 0; ki < ks.size(); ++ki) {
        for (int j = 1; j <= n; ++j) {
            if (ks[ki].contains(j)) continue;
            Entry e;
            e.j = j;
            e.sign = insertion_sign(j, ks[ki]);
            e.index_rank = multi_index_rank(n, insert_index(j, ks[ki]));
            per_k_[ki].push_back(e);
        }
    }
}

double CommutatorForm::quadratic(std::span<const cplx> f, const HermitianMatrix& theta) const {
    if (theta.dim() != n_) throw InputError("CommutatorForm: theta dimension mismatch");
    if (f.size() != binomial(n_, q_)) throw InputError("CommutatorForm: coefficient count mismatch");
    double total = 0.0;
    for (const auto& row : per_k_) {
        for (const Entry& a : row) {
            const cplx fa = a.sign * f[a.index_rank];
            for (const Entry& b : row) {
                const cplx fb = b.sign * f[b.index_rank];
                // pairing conjugate-linear in the j slot, so q = 1 recovers
                // <theta f, f> with theta acting as the matrix itself
                total += (theta(a.j - 1, b.j - 1) * fb * std::conj(fa)).real();
            }
        }
    }
    return total;
}

double CommutatorForm::quadratic(std::span<const cplx> f, const std::vector<ComplexMatrix>& blocks,
                                 int r) const {
    if (static_cast<int>(blocks.size()) != n_ * n_)
        throw InputError("CommutatorForm: need n*n curvature blocks");
    if (f.size() != binomial(n_, q_) * static_cast<size_t>(r))
        throw InputError("CommutatorForm: coefficient count mismatch");
    double total = 0.0;
    for (const auto& row : per_k_) {
        for (const Entry& a : row) {
            for (const Entry& b : row) {
                const auto& th = blocks[static_cast<size_t>(a.j - 1) * n_ + (b.j - 1)];
                cplx acc{};
                for (int s = 0; s < r; ++s) {
                    cplx ts{};
                    for (int t = 0; t < r; ++t) ts += th(s, t) * f[b.index_rank * r + t];
                    acc += std::conj(f[a.index_rank * r + s]) * ts;
                }
                total += (a.sign * b.sign * acc).real();
            }
        }
    }
    return total;
}

namespace {

// Recover the Hermitian operator from its quadratic form by polarization:
// <A e_b, e_a> = 1/4 [Q(e_b+e_a) - Q(e_b-e_a) + i Q(e_b+i e_a) - i Q(e_b-i e_a)].
OperatorNQ polarize(int n, int q, int r, const std::function<double(std::span<const cplx>)>& quad) {
    const size_t dim = binomial(n, q) * static_cast<size_t>(r);
    ComplexMatrix a(static_cast<int>(dim), static_cast<int>(dim));
    std::vector<cplx> work(dim);
    auto q_of = [&](size_t i, size_t j, cplx wi, cplx wj) {
        std::fill(work.begin(), work.end(), cplx{});
        work[i] += wi;
        work[j] += wj;
        return quad(work);
    };
    for (size_t d = 0; d < dim; ++d) {
        std::fill(work.begin(), work.end(), cplx{});
        work[d] = 1.0;
        a(static_cast<int>(d), static_cast<int>(d)) = quad(work);
    }
    for (size_t col = 0; col < dim; ++col) {
        for (size_t row = 0; row < col; ++row) {
            const double qpp = q_of(col, row, 1.0, 1.0);
            const double qpm = q_of(col, row, 1.0, -1.0);
            const double qpi = q_of(col, row, 1.0, cplx(0.0, 1.0));
            const double qmi = q_of(col, row, 1.0, cplx(0.0, -1.0));
            const cplx v = 0.25 * cplx(qpp - qpm, qpi - qmi);
            a(static_cast<int>(row), static_cast<int>(col)) = v;
            a(static_cast<int>(col), static_cast<int>(row)) = std::conj(v);
        }
    }
    OperatorNQ op;
    op.n = n;
    op.q = q;
    op.r = r;
    op.mat = HermitianMatrix(a);
    return op;
}

} // namespace

OperatorNQ commutator_operator(const HermitianMatrix& theta, int q) {
    const CommutatorForm form(theta.dim(), q);
    return polarize(theta.dim(), q, 1,
                    [&](std::span<const cplx> f) { return form.quadratic(f, theta); });
}

OperatorNQ commutator_operator(const std::vector<ComplexMatrix>& blocks, int n, int r, int q) {
    const CommutatorForm form(n, q);
    return polarize(n, q, r,
                    [&](std::span<const cplx> f) { return form.quadratic(f, blocks, r); });
}

OperatorNQ twist_operator(const HermitianMatrix& hessian_psi, double c, int q) {
    if (c < 0.0) throw InputError("twist_operator: c must be >= 0");
    OperatorNQ op = commutator_operator(hessian_psi, q);
    HermitianMatrix shifted = op.mat;
    for (int i = 0; i < shifted.dim(); ++i) shifted.set(i, i, shifted(i, i).real() + c);
    op.mat = shifted;
    try {
        core::Cholesky probe(op.mat.matrix());
    } catch (const DefinitenessError&) {
        throw DefinitenessError(
            "twist_operator: [ddbar psi, Lambda] + c is not positive definite "
            "(psi not strictly plurisubharmonic for this use)");
    }
    return op;
}

FormNQ apply_inverse(const OperatorNQ& a, const FormNQ& f) {
    if (f.n != a.n || f.q != a.q || f.r != a.r) throw InputError("apply_inverse: shape mismatch");
    const core::Cholesky chol(a.mat.matrix());
    FormNQ g = f;
    g.coef = chol.solve(f.coef);
    // residual check against the contract
    const auto back = a.mat.matrix().apply(g.coef);
    double rnorm = 0.0, fnorm = 0.0;
    for (size_t i = 0; i < back.size(); ++i) {
        rnorm += std::norm(back[i] - f.coef[i]);
        fnorm += std::norm(f.coef[i]);
    }
    if (std::sqrt(rnorm) > 1e-10 * std::sqrt(fnorm) + 1e-300)
        throw SolverError("apply_inverse: residual above tolerance");
    return g;
}

namespace {

nlohmann::json coefficients_json(const std::vector<cplx>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (cplx c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

std::vector<cplx> coefficients_from_json(const nlohmann::json& arr) {
    std::vector<cplx> v;
    v.reserve(arr.size());
    for (const auto& e : arr) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

constexpr const char* kOrdering = "multi-index lexicographic, rank minor";

} // namespace

std::string FormNQ::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["q"] = q;
    j["r"] = r;
    j["ordering"] = kOrdering;
    j["coefficients"] = coefficients_json(coef);
    return j.dump();
}

FormNQ FormNQ::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    FormNQ f = zero(j.at("n").get<int>(), j.at("q").get<int>(), j.at("r").get<int>());
    f.coef = coefficients_from_json(j.at("coefficients"));
    if (f.coef.size() != binomial(f.n, f.q) * static_cast<size_t>(f.r))
        throw InputError("FormNQ::from_json: coefficient count mismatch");
    return f;
}

std::string OperatorNQ::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["q"] = q;
    j["r"] = r;
    j["ordering"] = kOrdering;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < mat.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < mat.dim(); ++k) row.push_back({mat(i, k).real(), mat(i, k).imag()});
        rows.push_back(row);
    }
    j["matrix"] = rows;
    return j.dump();
}

OperatorNQ OperatorNQ::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    OperatorNQ op;
    op.n = j.at("n").get<int>();
    op.q = j.at("q").get<int>();
    op.r = j.at("r").get<int>();
    const auto& rows = j.at("matrix");
    const int dim = static_cast<int>(rows.size());
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            m(i, k) = cplx(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
    op.mat = HermitianMatrix(m);
    return op;
}

} // namespace l2pos::forms
