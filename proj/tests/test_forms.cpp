#include <doctest.h>

#include <cmath>
#include <random>

#include "l2pos/forms.hpp"

using namespace l2pos;
using namespace l2pos::forms;
using core::binomial;
using core::cplx;
using core::multi_indices;

namespace {

HermitianMatrix random_hermitian(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(u(rng), u(rng));
    return HermitianMatrix(m);
}

} // namespace

TEST_CASE("commutator_operator is diagonal with subset sums for diagonal theta") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        std::vector<double> gamma(n);
        for (double& g : gamma) g = u(rng);
        const auto theta = HermitianMatrix::diagonal(gamma);
        for (int q = 1; q <= n; ++q) {
            const auto op = commutator_operator(theta, q);
            const auto idx = multi_indices(n, q);
            REQUIRE(op.dim() == static_cast<int>(idx.size()));
            for (size_t a = 0; a < idx.size(); ++a) {
                double expect = 0.0;
                for (int k : idx[a].indices) expect += gamma[k - 1];
                for (size_t b = 0; b < idx.size(); ++b) {
                    const cplx want = a == b ? cplx(expect) : cplx{};
                    REQUIRE(std::abs(op.mat(static_cast<int>(a), static_cast<int>(b)) - want) <=
                            1e-12);
                }
            }
        }
    }
}

TEST_CASE("commutator_operator at q = 1 equals theta itself") {
    std::mt19937 rng(32);
    const auto theta = random_hermitian(rng, 4);
    const auto op = commutator_operator(theta, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(op.mat(i, j) - theta(i, j)) < 1e-12);
}

TEST_CASE("commutator_operator at q = n is the trace") {
    std::mt19937 rng(33);
    const auto theta = random_hermitian(rng, 3);
    const auto op = commutator_operator(theta, 3);
    REQUIRE(op.dim() == 1);
    cplx tr{};
    for (int i = 0; i < 3; ++i) tr += theta(i, i);
    CHECK(std::abs(op.mat(0, 0) - tr) < 1e-12);
}

TEST_CASE("spectral bridge: operator spectrum is the multiset of q-subset sums") {
    std::mt19937 rng(34);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + trial % 5;
        const auto theta = random_hermitian(rng, n);
        const auto spec_theta = core::eig_hermitian(theta);
        for (int q = 1; q <= n; ++q) {
            const auto op = commutator_operator(theta, q);
            const auto spec_op = core::eig_hermitian(op.mat);
            const auto sums = core::subset_sums_oracle(spec_theta, q);
            REQUIRE(spec_op.eigenvalues.size() == sums.size());
            for (size_t i = 0; i < sums.size(); ++i)
                REQUIRE(std::abs(spec_op.eigenvalues[i] - sums[i]) <= 1e-10);
            REQUIRE(std::abs(spec_op.eigenvalues.front() - core::q_smallest_sum(spec_theta, q)) <=
                    1e-10);
        }
    }
}

TEST_CASE("commutator_operator for bundle blocks reduces to rank-1 case") {
    std::mt19937 rng(35);
    const int n = 3;
    const auto theta = random_hermitian(rng, n);
    std::vector<ComplexMatrix> blocks(n * n, ComplexMatrix(1, 1));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) blocks[j * n + k](0, 0) = theta(j, k);
    for (int q = 1; q <= n; ++q) {
        const auto a = commutator_operator(theta, q);
        const auto b = commutator_operator(blocks, n, 1, q);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) REQUIRE(std::abs(a.mat(i, j) - b.mat(i, j)) < 1e-12);
    }
}

TEST_CASE("twist_operator model cases") {
    const auto id3 = HermitianMatrix::diagonal(std::vector<double>{1.0, 1.0, 1.0});
    const auto t1 = twist_operator(id3, 0.0, 2);
    REQUIRE(t1.dim() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(t1.mat(i, j) - (i == j ? cplx(2.0) : cplx{})) < 1e-12);

    const auto id1 = HermitianMatrix::diagonal(std::vector<double>{1.0});
    const auto t2 = twist_operator(id1, 1.0, 1);
    CHECK(std::abs(t2.mat(0, 0) - 2.0) < 1e-14);

    const auto d12 = HermitianMatrix::diagonal(std::vector<double>{1.0, 2.0});
    const auto t3 = twist_operator(d12, 0.0, 1);
    CHECK(std::abs(t3.mat(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(t3.mat(1, 1) - 2.0) < 1e-14);

    // m * identity: operator is (m q + c) identity exactly
    for (double m : {0.5, 2.0, 7.0}) {
        const auto hm = HermitianMatrix::diagonal(std::vector<double>{m, m, m, m});
        for (int q = 1; q <= 4; ++q) {
            const auto t = twist_operator(hm, 0.25, q);
            for (int i = 0; i < t.dim(); ++i)
                CHECK(t.mat(i, i).real() == doctest::Approx(m * q + 0.25).epsilon(1e-14));
        }
    }

    CHECK_THROWS_AS(twist_operator(HermitianMatrix::diagonal(std::vector<double>{-1.0, 1.0}), 0.0, 1),
                    DefinitenessError);
    CHECK_THROWS_AS(twist_operator(id3, -1.0, 1), InputError);
}

TEST_CASE("apply_inverse") {
    // A = 2 I: inverse halves
    const auto id2 = HermitianMatrix::diagonal(std::vector<double>{1.0, 1.0});
    const auto a = twist_operator(id2, 1.0, 1); // 2 I on 2 coefficients
    FormNQ f = FormNQ::zero(2, 1, 1);
    f.at(0, 0) = cplx(1.0, -2.0);
    f.at(1, 0) = cplx(0.5, 0.25);
    const auto g = apply_inverse(a, f);
    CHECK(std::abs(g.at(0, 0) - cplx(0.5, -1.0)) < 1e-12);
    CHECK(std::abs(g.at(1, 0) - cplx(0.25, 0.125)) < 1e-12);

    // diagonal theta: basis vector e_I maps to e_I / (sum_I gamma + c)
    const std::vector<double> gamma{0.5, 1.5, 2.5};
    const auto theta = HermitianMatrix::diagonal(gamma);
    const double c = 0.75;
    const auto t = twist_operator(theta, c, 2);
    const auto idx = multi_indices(3, 2);
    for (size_t i = 0; i < idx.size(); ++i) {
        const auto e = FormNQ::basis(3, 2, 1, i, 0);
        const auto gi = apply_inverse(t, e);
        double denom = c;
        for (int k : idx[i].indices) denom += gamma[k - 1];
        CHECK(std::abs(gi.at(i, 0) - 1.0 / denom) < 1e-12);
    }

    // random SPD twist: residual oracle via multiply-back, <A^{-1} f, f> >= 0
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto h = random_hermitian(rng, 4);
    for (int i = 0; i < 4; ++i) h.set(i, i, h(i, i).real() + 3.0);
    const auto op = twist_operator(h, 0.5, 2);
    FormNQ rf = FormNQ::zero(4, 2, 1);
    for (auto& v : rf.coef) v = cplx(u(rng), u(rng));
    const auto sol = apply_inverse(op, rf);
    const auto back = op.apply(sol);
    double err = 0.0;
    cplx inner{};
    for (size_t i = 0; i < rf.coef.size(); ++i) {
        err = std::max(err, std::abs(back.coef[i] - rf.coef[i]));
        inner += sol.coef[i] * std::conj(rf.coef[i]);
    }
    CHECK(err < 1e-10);
    CHECK(inner.real() >= 0.0);
    CHECK(std::abs(inner.imag()) < 1e-12);

    // inverse then apply is the identity
    const auto round = op.apply(apply_inverse(op, rf));
    for (size_t i = 0; i < rf.coef.size(); ++i)
        CHECK(std::abs(round.coef[i] - rf.coef[i]) < 1e-9);
}

TEST_CASE("form and operator JSON round trips") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FormNQ f = FormNQ::zero(3, 2, 2);
    for (auto& v : f.coef) v = cplx(u(rng), u(rng));
    const auto f2 = FormNQ::from_json(f.to_json());
    REQUIRE(f2.coef.size() == f.coef.size());
    for (size_t i = 0; i < f.coef.size(); ++i) CHECK(f.coef[i] == f2.coef[i]);

    const auto theta = random_hermitian(rng, 3);
    const auto op = commutator_operator(theta, 2);
    const auto op2 = OperatorNQ::from_json(op.to_json());
    for (int i = 0; i < op.dim(); ++i)
        for (int j = 0; j < op.dim(); ++j) CHECK(op.mat(i, j) == op2.mat(i, j));
}

TEST_CASE("form shape validation") {
    CHECK_THROWS_AS(FormNQ::zero(2, 3, 1), InputError);
    const auto id2 = HermitianMatrix::diagonal(std::vector<double>{1.0, 1.0});
    const auto a = twist_operator(id2, 0.0, 1);
    FormNQ wrong = FormNQ::zero(2, 2, 1);
    CHECK_THROWS_AS(apply_inverse(a, wrong), InputError);
    CHECK_THROWS_AS(CommutatorForm(3, 0), InputError);
    CHECK_THROWS_AS(CommutatorForm(3, 4), InputError);
}
