#include "l2pos/symbolic.hpp"

#include <algorithm>
#include <cmath>

namespace l2pos::forms {

using core::binomial;
using core::cplx;
using core::insert_index;
using core::insertion_sign;
using core::multi_index_rank;
using core::multi_indices;
using core::MultiIndex;

void SymScalar::add_term(const SymTerm& t) {
    if (t.coef == cplx{}) return;
    for (SymTerm& u : terms_) {
        if (u.der == t.der && u.tpow == t.tpow && u.zpow == t.zpow && u.zbarpow == t.zbarpow) {
            u.coef += t.coef;
            return;
        }
    }
    terms_.push_back(t);
}

SymScalar& SymScalar::operator+=(const SymScalar& o) {
    if (n_ == 0) *this = SymScalar(o.n_, o.profile_);
    for (const SymTerm& t : o.terms_) add_term(t);
    return *this;
}

SymScalar SymScalar::scaled(cplx s) const {
    SymScalar out(n_, profile_);
    for (SymTerm t : terms_) {
        t.coef *= s;
        out.add_term(t);
    }
    return out;
}

cplx SymScalar::eval(std::span<const cplx> zeta) const {
    if (terms_.empty()) return {};
    double t2 = 0.0;
    for (int j = 0; j < n_; ++j) t2 += std::norm(zeta[j]);
    const double t = std::sqrt(t2);
    cplx total{};
    for (const SymTerm& term : terms_) {
        const double radial = profile_->deriv[term.der](t);
        if (radial == 0.0) continue; // also guards t^(-p) at the origin
        cplx v = term.coef * radial;
        for (int p = 0; p < term.tpow; ++p) v /= t;
        for (int j = 0; j < n_; ++j) {
            for (int p = 0; p < term.zpow[j]; ++p) v *= zeta[j];
            for (int p = 0; p < term.zbarpow[j]; ++p) v *= std::conj(zeta[j]);
        }
        total += v;
    }
    return total;
}

SymScalar SymScalar::dbar(int j) const {
    SymScalar out(n_, profile_);
    const int a = j - 1;
    for (const SymTerm& term : terms_) {
        // radial chain: d/dt [P^(k)/t^p] * dt/dconj(zeta_j) = [...] * zeta_j / (2t)
        if (term.der + 1 < static_cast<int>(profile_->deriv.size())) {
            SymTerm up = term;
            up.coef *= 0.5;
            up.der += 1;
            up.tpow += 1;
            up.zpow[a] += 1;
            out.add_term(up);
        } else {
            throw InputError("SymScalar::dbar: radial profile differentiated too deep");
        }
        if (term.tpow > 0) {
            SymTerm down = term;
            down.coef *= -0.5 * term.tpow;
            down.tpow += 2;
            down.zpow[a] += 1;
            out.add_term(down);
        }
        // monomial rule on conj(zeta_j)
        if (term.zbarpow[a] > 0) {
            SymTerm mono = term;
            mono.coef *= static_cast<double>(term.zbarpow[a]);
            mono.zbarpow[a] -= 1;
            out.add_term(mono);
        }
    }
    return out;
}

SymFormNQ SymFormNQ::zero(int n, int q, const std::shared_ptr<const RadialProfile>& profile) {
    if (n < 1 || n > kSymMaxN || q < 0 || q > n) throw InputError("SymFormNQ: bad (n, q)");
    SymFormNQ f;
    f.n = n;
    f.q = q;
    f.comp.assign(binomial(n, q), SymScalar(n, profile));
    return f;
}

std::vector<cplx> SymFormNQ::eval(std::span<const cplx> zeta) const {
    std::vector<cplx> out(comp.size());
    for (size_t i = 0; i < comp.size(); ++i) out[i] = comp[i].eval(zeta);
    return out;
}

double SymFormNQ::norm2(std::span<const cplx> zeta) const {
    double s = 0.0;
    for (const auto& c : comp) s += std::norm(c.eval(zeta));
    return s;
}

SymFormPJ SymFormPJ::zero(int n, int q, const std::shared_ptr<const RadialProfile>& profile) {
    if (n < 1 || n > kSymMaxN || q < 0 || q > n) throw InputError("SymFormPJ: bad (n, q)");
    SymFormPJ f;
    f.n = n;
    f.q = q;
    f.comp.assign(static_cast<size_t>(n) * binomial(n, q), SymScalar(n, profile));
    return f;
}

SymScalar& SymFormPJ::at(int p, size_t j_rank) {
    return comp[static_cast<size_t>(p - 1) * binomial(n, q) + j_rank];
}
const SymScalar& SymFormPJ::at(int p, size_t j_rank) const {
    return comp[static_cast<size_t>(p - 1) * binomial(n, q) + j_rank];
}

double SymFormPJ::norm2(std::span<const cplx> zeta) const {
    double s = 0.0;
    for (const auto& c : comp) s += std::norm(c.eval(zeta));
    return s;
}

namespace {

// sign of moving dz_p into dz_{[n] \ p}: p-1 transpositions
int epsilon_p(int p) { return (p - 1) % 2 == 0 ? 1 : -1; }

} // namespace

SymFormNQ dbar_symbolic(const SymFormNQ& v) {
    if (v.q >= v.n) throw InputError("dbar_symbolic: degree would exceed n");
    const auto upper = multi_indices(v.n, v.q + 1);
    SymFormNQ out;
    out.n = v.n;
    out.q = v.q + 1;
    out.comp.assign(upper.size(), SymScalar());
    for (size_t iu = 0; iu < upper.size(); ++iu) {
        for (int j : upper[iu].indices) {
            MultiIndex k = upper[iu];
            k.indices.erase(std::find(k.indices.begin(), k.indices.end(), j));
            const double sign = insertion_sign(j, k);
            const size_t kr = multi_index_rank(v.n, k);
            out.comp[iu] += v.comp[kr].dbar(j).scaled(sign);
        }
    }
    return out;
}

SymFormPJ lambda_contract(const SymFormNQ& g) {
    if (g.q < 1) throw InputError("lambda_contract: q must be >= 1");
    SymFormPJ h;
    h.n = g.n;
    h.q = g.q - 1;
    const auto js = multi_indices(g.n, g.q - 1);
    h.comp.assign(static_cast<size_t>(g.n) * js.size(), SymScalar());
    const double global = (g.n - 1) % 2 == 0 ? 1.0 : -1.0; // (-1)^(n-1)
    for (int p = 1; p <= g.n; ++p) {
        for (size_t jr = 0; jr < js.size(); ++jr) {
            if (js[jr].contains(p)) continue;
            const double sign = global * epsilon_p(p) * insertion_sign(p, js[jr]);
            const size_t gr = multi_index_rank(g.n, insert_index(p, js[jr]));
            h.comp[static_cast<size_t>(p - 1) * js.size() + jr] +=
                g.comp[gr].scaled(cplx(0.0, -1.0) * sign);
        }
    }
    return h;
}

SymFormPJ dprime_star_closed(const SymFormNQ& g) {
    const SymFormPJ h = lambda_contract(g);
    SymFormPJ out;
    out.n = g.n;
    out.q = g.q;
    const auto upper = multi_indices(g.n, g.q);
    out.comp.assign(static_cast<size_t>(g.n) * upper.size(), SymScalar());
    const double global = (g.n - 1) % 2 == 0 ? 1.0 : -1.0; // dzbar_j past dz_{[n]\p}
    for (int p = 1; p <= g.n; ++p) {
        for (size_t iu = 0; iu < upper.size(); ++iu) {
            SymScalar acc;
            for (int j : upper[iu].indices) {
                MultiIndex k = upper[iu];
                k.indices.erase(std::find(k.indices.begin(), k.indices.end(), j));
                const double sign = global * insertion_sign(j, k);
                const size_t kr = multi_index_rank(g.n, k);
                acc += h.at(p, kr).dbar(j).scaled(sign);
            }
            out.comp[static_cast<size_t>(p - 1) * upper.size() + iu] =
                acc.scaled(cplx(0.0, -1.0));
        }
    }
    return out;
}

SymFormNQ wedge_omega(const SymFormPJ& h) {
    SymFormNQ out;
    out.n = h.n;
    out.q = h.q + 1;
    const auto js = multi_indices(h.n, h.q);
    const auto is = multi_indices(h.n, h.q + 1);
    out.comp.assign(is.size(), SymScalar());
    const double global = (h.n - 1) % 2 == 0 ? 1.0 : -1.0;
    for (size_t ir = 0; ir < is.size(); ++ir) {
        for (int p : is[ir].indices) {
            MultiIndex j = is[ir];
            j.indices.erase(std::find(j.indices.begin(), j.indices.end(), p));
            const double sign = global * epsilon_p(p) * insertion_sign(p, j);
            out.comp[ir] += h.at(p, multi_index_rank(h.n, j)).scaled(cplx(0.0, 1.0) * sign);
        }
    }
    return out;
}

} // namespace l2pos::forms
