#pragma once

// Closed-form (n,q)-form fields whose coefficients are sums of
// radial-profile factors times monomials in zeta and conj(zeta):
// exactly the shape of the probe forms chi * monomial and their derivatives.
// Supports exact dbar differentiation, the Lambda contraction against the
// Euclidean Kaehler form, and the adjoint-side evaluation
// D'* g = -i dbar(Lambda g) valid for dbar-closed g, which is independent of
// the weight by the Kaehler commutation relation.
//
// Conventions: coefficients are taken against the monomials
// dz_1^...^dz_n ^ dzbar_I (and dz_{[n]\p} ^ dzbar_J for the mixed-degree
// results); those monomials are orthonormal in the pointwise inner product of
// omega = i sum dz_j ^ dzbar_j. The coefficient dbar drops the global sign
// from moving dzbar past dZ, matching the discrete grid operator.

#include <array>
#include <functional>
#include <memory>

#include "l2pos/linalg.hpp"
#include "l2pos/multi_index.hpp"

namespace l2pos::forms {

// t -> profile value with three closed-form derivatives.
struct RadialProfile {
    std::array<std::function<double(double)>, 4> deriv;
};

inline constexpr int kSymMaxN = 4;

// coef * profile^(der)(t) / t^tpow * prod zeta^zpow * prod conj(zeta)^zbarpow
struct SymTerm {
    core::cplx coef{1.0, 0.0};
    int der = 0;
    int tpow = 0;
    std::array<int, kSymMaxN> zpow{};
    std::array<int, kSymMaxN> zbarpow{};
};

class SymScalar {
  public:
    SymScalar() = default;
    SymScalar(int n, std::shared_ptr<const RadialProfile> profile)
        : n_(n), profile_(std::move(profile)) {}

    int n() const { return n_; }
    bool zero() const { return terms_.empty(); }
    const std::vector<SymTerm>& terms() const { return terms_; }

    void add_term(const SymTerm& t);
    SymScalar& operator+=(const SymScalar& o);
    SymScalar scaled(core::cplx s) const;

    core::cplx eval(std::span<const core::cplx> zeta) const;

    // d / d conj(zeta_j), 1-based j; exact term algebra
    SymScalar dbar(int j) const;

  private:
    int n_ = 0;
    std::shared_ptr<const RadialProfile> profile_;
    std::vector<SymTerm> terms_;
};

// (n,q)-form field with SymScalar coefficients per multi_indices(n, q).
struct SymFormNQ {
    int n = 0, q = 0;
    std::vector<SymScalar> comp;

    static SymFormNQ zero(int n, int q, const std::shared_ptr<const RadialProfile>& profile);
    std::vector<core::cplx> eval(std::span<const core::cplx> zeta) const;
    double norm2(std::span<const core::cplx> zeta) const;
};

// Mixed-degree field: coefficients against dz_{[n] \ p} ^ dzbar_J, indexed
// p-major over p in [1, n], J in multi_indices(n, q).
struct SymFormPJ {
    int n = 0, q = 0;
    std::vector<SymScalar> comp; // size n * C(n, q)

    static SymFormPJ zero(int n, int q, const std::shared_ptr<const RadialProfile>& profile);
    SymScalar& at(int p, size_t j_rank);
    const SymScalar& at(int p, size_t j_rank) const;
    double norm2(std::span<const core::cplx> zeta) const;
};

// Coefficient dbar: (n,q) -> (n,q+1), out_I = sum_{j in I} sign(j, I\j) dbar_j v_{I\j}.
SymFormNQ dbar_symbolic(const SymFormNQ& v);

// Contraction against omega: (n,q) -> (n-1,q-1).
SymFormPJ lambda_contract(const SymFormNQ& g);

// D'* g = -i dbar(Lambda g) for dbar-closed g: (n,q) -> (n-1,q).
// Identical for every weight e^{-psi} by the commutation relation; vanishes
// wherever g has locally constant coefficients.
SymFormPJ dprime_star_closed(const SymFormNQ& g);

// omega ^ . : (n-1,q-1) -> (n,q); used to test that L(Lambda g) = q g.
SymFormNQ wedge_omega(const SymFormPJ& h);

} // namespace l2pos::forms
