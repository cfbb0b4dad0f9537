#include <doctest.h>

#include <cmath>
#include <random>

#include "l2pos/probe.hpp"
#include "l2pos/symbolic.hpp"

using namespace l2pos;
using namespace l2pos::forms;
using core::cplx;
using l2pos::probes::Cutoff;

namespace {

std::vector<cplx> random_zeta(std::mt19937& rng, int n, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cplx> z(n);
    for (auto& v : z) v = cplx(u(rng), u(rng));
    return z;
}

// central-difference dbar_j of a SymScalar field, for cross-checking
cplx fd_dbar(const SymScalar& s, std::span<const cplx> zeta, int j, double h) {
    std::vector<cplx> p(zeta.begin(), zeta.end());
    auto at = [&](cplx shift) {
        p[j - 1] = zeta[j - 1] + shift;
        return s.eval(p);
    };
    const cplx ddx = (at(cplx(h, 0)) - at(cplx(-h, 0))) / (2.0 * h);
    const cplx ddy = (at(cplx(0, h)) - at(cplx(0, -h))) / (2.0 * h);
    return 0.5 * (ddx + cplx(0, 1) * ddy);
}

} // namespace

TEST_CASE("cutoff: plateau, support, and derivative consistency") {
    const Cutoff chi(0.8);
    CHECK(chi.value(0.0) == 1.0);
    CHECK(chi.value(0.39) == 1.0);
    CHECK(chi.d(1, 0.2) == 0.0);
    CHECK(chi.value(0.81) == 0.0);
    CHECK(chi.value(2.0) == 0.0);
    CHECK(chi.value(0.6) > 0.0);
    CHECK(chi.value(0.6) < 1.0);

    // derivatives match finite differences of the level below
    for (int k = 1; k <= 3; ++k) {
        for (double t : {0.45, 0.5501, 0.62, 0.7, 0.76}) {
            const double h = 1e-5;
            const double fd = (chi.d(k - 1, t + h) - chi.d(k - 1, t - h)) / (2.0 * h);
            CHECK(chi.d(k, t) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    // continuity across the plateau edge and the support edge
    CHECK(chi.d(0, 0.4 + 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(chi.d(1, 0.8 - 1e-7) == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("symbolic dbar agrees with finite differences") {
    const Cutoff chi(0.8);
    auto prof = chi.profile();
    SymScalar s(2, prof);
    SymTerm t1;
    t1.coef = cplx(1.0, 0.5);
    t1.zbarpow[0] = 1; // conj(zeta_1)
    s.add_term(t1);
    SymTerm t2;
    t2.coef = 2.0;
    t2.der = 1;
    t2.tpow = 1;
    t2.zpow[1] = 1;
    s.add_term(t2);

    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto z = random_zeta(rng, 2, 0.4); // some points inside plateau, some out
        for (int j = 1; j <= 2; ++j) {
            const cplx exact = s.dbar(j).eval(z);
            const cplx fd = fd_dbar(s, z, j, 1e-6);
            CHECK(std::abs(exact - fd) < 1e-5);
        }
    }
}

TEST_CASE("probe form equals the monomial on the plateau and is dbar-closed") {
    for (int n : {1, 2, 3}) {
        for (int q = 1; q <= n; ++q) {
            const auto pf = probes::make_probe_form(n, q, 0.8);
            REQUIRE(pf.g.q == q);

            // plateau: coefficient 1 on {1..q}, 0 elsewhere
            std::vector<cplx> inner(n, cplx(0.1, -0.05));
            const auto vals = pf.g.eval(inner);
            CHECK(std::abs(vals[0] - 1.0) < 1e-14);
            for (size_t i = 1; i < vals.size(); ++i) CHECK(std::abs(vals[i]) < 1e-14);

            // dbar g = 0 pointwise (spec oracle tolerance 1e-10)
            if (q < n) {
                const auto dg = dbar_symbolic(pf.g);
                std::mt19937 rng(17 + n * 10 + q);
                for (int trial = 0; trial < 100; ++trial) {
                    const auto z = random_zeta(rng, n, 0.5);
                    for (const auto& comp : dg.eval(z)) REQUIRE(std::abs(comp) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("wedge then contract is q times the identity on (n,q)") {
    const Cutoff chi(1.0);
    auto prof = chi.profile();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2, 3, 4}) {
        for (int q = 1; q <= n; ++q) {
            // random constant-coefficient form times the cutoff profile
            auto g = SymFormNQ::zero(n, q, prof);
            for (auto& compnt : g.comp) {
                SymTerm t;
                t.coef = cplx(u(rng), u(rng));
                compnt.add_term(t);
            }
            const auto back = wedge_omega(lambda_contract(g));
            const auto z = random_zeta(rng, n, 0.3);
            const auto gv = g.eval(z);
            const auto bv = back.eval(z);
            for (size_t i = 0; i < gv.size(); ++i)
                REQUIRE(std::abs(bv[i] - static_cast<double>(q) * gv[i]) < 1e-12);
        }
    }
}

TEST_CASE("dprime_star_closed vanishes on constant-coefficient forms and on zero") {
    const Cutoff chi(1.0);
    auto prof = chi.profile();
    auto g = SymFormNQ::zero(2, 1, prof);
    SymTerm t;
    t.coef = cplx(0.7, -0.3);
    g.comp[0].add_term(t);
    t.coef = cplx(-0.2, 0.9);
    g.comp[1].add_term(t);

    const auto ds = dprime_star_closed(g);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        // inside the plateau the coefficients are genuinely constant
        const auto z = random_zeta(rng, 2, 0.15);
        CHECK(ds.norm2(z) < 1e-28);
    }

    const auto zero = SymFormNQ::zero(2, 1, prof);
    const auto dz = dprime_star_closed(zero);
    CHECK(dz.norm2(std::vector<cplx>{cplx(0.2, 0.1), cplx(0.0, 0.3)}) == 0.0);
}

TEST_CASE("dprime_star_closed n=1: equals -dbar of the cutoff coefficient") {
    // g = chi dz ^ dzbar: Lambda g = -i chi, D'* g = -i dbar(-i chi) = -chi_zbar
    const Cutoff chi(0.8);
    auto prof = chi.profile();
    auto g = SymFormNQ::zero(1, 1, prof);
    SymTerm t;
    g.comp[0].add_term(t); // coefficient chi(t)

    const auto ds = dprime_star_closed(g);
    REQUIRE(ds.comp.size() == 1);

    std::mt19937 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto z = random_zeta(rng, 1, 0.45);
        // hand formula: chi_zbar = chi'(t) * zeta / (2t)
        const double tt = std::abs(z[0]);
        cplx expect = 0.0;
        if (tt > 0) expect = -chi.d(1, tt) * z[0] / (2.0 * tt);
        CHECK(std::abs(ds.comp[0].eval(z) - expect) < 1e-12);

        // finite-difference oracle on the contracted field (derived check)
        const auto lam = lambda_contract(g);
        const cplx fd = cplx(0, -1) * fd_dbar(lam.comp[0], z, 1, 1e-6);
        CHECK(std::abs(ds.comp[0].eval(z) - fd) < 1e-6);
    }
}

TEST_CASE("dprime_star_closed n=2 q=1 matches finite differences of the contraction") {
    const auto pf = probes::make_probe_form(2, 1, 0.8);
    const auto lam = lambda_contract(pf.g);
    const auto ds = dprime_star_closed(pf.g);
    // out_{p} = -i * (-1)^{n-1} * dbar_p applied to the p-th contraction row
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto z = random_zeta(rng, 2, 0.45);
        for (int p = 1; p <= 2; ++p) {
            const cplx fd = cplx(0, -1) * (-1.0) * fd_dbar(lam.at(p, 0), z, 1, 1e-6);
            // J' = {1}: the only contributing j is 1 with sign +1
            CHECK(std::abs(ds.at(p, 0).eval(z) - fd) < 1e-6);
        }
    }
}
