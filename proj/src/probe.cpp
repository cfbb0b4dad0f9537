#include "l2pos/probe.hpp"

#include <cmath>

#include "l2pos/parallel.hpp"
#include "l2pos/sampling.hpp"

namespace l2pos::probes {

using core::cplx;
using core::HermitianMatrix;
using forms::SymFormNQ;

Cutoff::Cutoff(double r) : r_(r) {
    if (!(r > 0.0)) throw InputError("Cutoff: radius must be positive");
}

double Cutoff::d(int k, double t) const {
    if (k < 0 || k > 3) throw InputError("Cutoff: derivative order out of range");
    if (t <= 0.5 * r_) return k == 0 ? 1.0 : 0.0;
    if (t >= r_) return 0.0;
    const double s = 2.0 * t / r_ - 1.0; // in (0,1)
    const double u = 1.0 / (1.0 - s * s);
    const double chi = std::exp(1.0 - u);
    const double scale = 2.0 / r_; // d/dt = scale * d/ds
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u, u6 = u5 * u;
    switch (k) {
        case 0: return chi;
        case 1: return scale * chi * (-2.0 * s * u2);
        case 2: return scale * scale * chi * (4.0 * s * s * u4 - 2.0 * u2 - 8.0 * s * s * u3);
        case 3:
            return scale * scale * scale * chi *
                   (-8.0 * s * s * s * u6 + 12.0 * s * u4 + 48.0 * s * s * s * u5 -
                    24.0 * s * u3 - 48.0 * s * s * s * u4);
    }
    return 0.0;
}

std::shared_ptr<const forms::RadialProfile> Cutoff::profile() const {
    auto prof = std::make_shared<forms::RadialProfile>();
    const Cutoff self = *this;
    for (int k = 0; k < 4; ++k)
        prof->deriv[k] = [self, k](double t) { return self.d(k, t); };
    return prof;
}

std::vector<double> default_m_schedule() {
    std::vector<double> m;
    for (int e = 0; e <= 14; ++e) m.push_back(std::ldexp(1.0, e));
    return m;
}

ProbeForm make_probe_form(int n, int q, double r) {
    if (q < 1 || q > n) throw InputError("make_probe_form: need 1 <= q <= n");
    ProbeForm pf;
    pf.chi = std::make_shared<Cutoff>(r);
    auto profile = pf.chi->profile();
    pf.v = SymFormNQ::zero(n, q - 1, profile);
    forms::SymTerm t;
    t.coef = (q - 1) % 2 == 0 ? 1.0 : -1.0; // makes g = +1 on {1..q} inside the plateau
    t.zbarpow[q - 1] = 1;                   // conj(zeta_q)
    pf.v.comp[0].add_term(t);               // {1,...,q-1} is the first index in lex order
    pf.g = dbar_symbolic(pf.v);
    return pf;
}

namespace {

Point rotate_point(const ProbeConfig& cfg, std::span<const cplx> zeta) {
    Point z(cfg.n);
    for (int j = 0; j < cfg.n; ++j) {
        cplx acc = cfg.witness[j];
        for (int k = 0; k < cfg.n; ++k) acc += cfg.rotation(j, k) * zeta[k];
        z[j] = acc;
    }
    return z;
}

HermitianMatrix rotated_hessian(const ProbeConfig& cfg, const Weight& w,
                                std::span<const cplx> zeta) {
    const Point z = rotate_point(cfg, zeta);
    const HermitianMatrix h = geometry::complex_hessian(w, z);
    return HermitianMatrix(cfg.rotation.adjoint() * h.matrix() * cfg.rotation);
}

// <([iTheta,Lambda] - c) F, F>(zeta) for the monomial F on the index set
// {1..q}: only the diagonal entries of the rotated Hessian enter.
double monomial_margin(const ProbeConfig& cfg, const Weight& w, std::span<const cplx> zeta) {
    const HermitianMatrix th = rotated_hessian(cfg, w, zeta);
    double s = 0.0;
    for (int j = 0; j < cfg.q; ++j) s += th(j, j).real();
    return s - cfg.c;
}

} // namespace

std::pair<ProbeForm, ProbeConfig> build_probe_form(const Weight& w, int q, double c,
                                                   const Point& witness, double r) {
    const int n = w.n();
    if (q < 1 || q > n) throw InputError("build_probe_form: need 1 <= q <= n");
    if (c < 0.0) throw InputError("build_probe_form: c must be >= 0");
    if (static_cast<int>(witness.size()) != n)
        throw InputError("build_probe_form: witness dimension mismatch");
    if (!(r > 0.0)) throw InputError("build_probe_form: r must be positive");

    ProbeConfig cfg;
    cfg.n = n;
    cfg.q = q;
    cfg.c = c;
    cfg.witness = witness;
    cfg.m_schedule = default_m_schedule();

    const auto spec = core::eig_hermitian(geometry::complex_hessian(w, witness));
    const double qsum = core::q_smallest_sum(spec, q);
    if (!(qsum < c))
        throw InputError("build_probe_form: no violation at the witness (q-sum " +
                         std::to_string(qsum) + " >= c)");
    cfg.rotation = spec.unitary;
    for (int i = 1; i <= q; ++i) cfg.violating_subset.indices.push_back(i);
    const double delta0 = 0.5 * (c - qsum);

    // keep the bump ball inside the attached domain, if any
    if (w.domain()) {
        const double dist = w.domain()->boundary_distance(witness);
        if (!(dist > 0.0)) throw InputError("build_probe_form: witness outside the domain");
        r = std::min(r, 0.95 * dist);
    }

    constexpr int kCertSamples = 4096;
    constexpr int kMaxShrinks = 6;
    for (int attempt = 0; attempt <= kMaxShrinks; ++attempt) {
        // dense deterministic sample of the ball of radius r around the witness
        core::HaltonSequence halton(2 * n);
        double worst = -std::numeric_limits<double>::infinity();
        int used = 0;
        while (used < kCertSamples) {
            const auto u = halton.next();
            std::vector<cplx> zeta(n);
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                zeta[j] = cplx(2.0 * u[2 * j] - 1.0, 2.0 * u[2 * j + 1] - 1.0);
                s += std::norm(zeta[j]);
            }
            if (s > 1.0) continue;
            for (auto& v : zeta) v *= r;
            ++used;
            worst = std::max(worst, monomial_margin(cfg, w, zeta));
        }
        if (worst < -delta0) {
            cfg.r = r;
            cfg.delta = -worst;
            return {make_probe_form(n, q, r), cfg};
        }
        r *= 0.5;
    }
    throw InputError("build_probe_form: could not certify the margin even after shrinking r");
}

SekibunTable::SekibunTable(const SymFormNQ& g, const ProbeConfig& cfg, const Weight& w, double c,
                           int points_per_axis) {
    const int n = cfg.n;
    r_ = cfg.r;
    const int axes = 2 * n;
    const int p = points_per_axis;
    if (p < 8) throw InputError("SekibunTable: too few quadrature points");
    const double h = 2.0 * r_ / p;
    cell_ = std::pow(h, axes);

    std::int64_t total = 1;
    for (int a = 0; a < axes; ++a) total *= p;

    const forms::SymFormPJ dstar = forms::dprime_star_closed(g);
    const forms::CommutatorForm quad(n, cfg.q);
    const double half = 0.5 * r_;

    // detect a curvature tensor that is constant on the ball (quadratic
    // weights) so the hot loop can skip the per-point Hessian
    bool constant_theta = true;
    const HermitianMatrix theta0 = rotated_hessian(cfg, w, std::vector<cplx>(n, cplx{}));
    {
        core::HaltonSequence probe_pts(2 * n);
        for (int s = 0; s < 8 && constant_theta; ++s) {
            const auto u = probe_pts.next();
            std::vector<cplx> zeta(n);
            for (int j = 0; j < n; ++j)
                zeta[j] = 0.5 * r_ * cplx(2.0 * u[2 * j] - 1.0, 2.0 * u[2 * j + 1] - 1.0);
            const HermitianMatrix th = rotated_hessian(cfg, w, zeta);
            for (int a = 0; a < n && constant_theta; ++a)
                for (int b = 0; b < n; ++b)
                    if (std::abs(th(a, b) - theta0(a, b)) > 1e-13 * (1.0 + theta0.max_abs())) {
                        constant_theta = false;
                        break;
                    }
        }
    }

    const int nchunks = 64;
    struct Chunk {
        std::vector<float> t2, p1, p2;
        double c1 = 0.0, c2 = 0.0;
    };
    std::vector<Chunk> chunks(nchunks);

    parallel_chunks(total, nchunks, [&](int ci, std::int64_t b, std::int64_t e) {
        Chunk& out = chunks[ci];
        std::vector<cplx> zeta(n);
        for (std::int64_t idx = b; idx < e; ++idx) {
            std::int64_t rem = idx;
            double t2 = 0.0;
            for (int a = axes - 1; a >= 0; --a) {
                const int i = static_cast<int>(rem % p);
                rem /= p;
                const double x = -r_ + (i + 0.5) * h;
                if (a % 2 == 0)
                    zeta[a / 2] = cplx(x, zeta[a / 2].imag());
                else
                    zeta[a / 2] = cplx(zeta[a / 2].real(), x);
                t2 += x * x;
            }
            if (t2 >= r_ * r_) continue;
            const double t = std::sqrt(t2);

            const auto gv = g.eval(zeta);
            double g2 = 0.0;
            for (cplx v : gv) g2 += std::norm(v);
            const double quad_val = constant_theta
                                        ? quad.quadratic(gv, theta0)
                                        : quad.quadratic(gv, rotated_hessian(cfg, w, zeta));
            const double p2 = quad_val - c * g2;
            const double p1 = t > half ? dstar.norm2(zeta) : 0.0;

            out.t2.push_back(static_cast<float>(t2));
            out.p1.push_back(static_cast<float>(p1));
            out.p2.push_back(static_cast<float>(p2));
            if (t > half) {
                out.c1 = std::max(out.c1, p1);
                out.c2 = std::max(out.c2, std::abs(p2));
            }
        }
    });

    size_t count = 0;
    for (const Chunk& ch : chunks) count += ch.t2.size();
    sum_.reserve(count);
    abs_sum_.reserve(count);
    dstar_.reserve(count);
    curv_.reserve(count);
    t2pts_.reserve(count);
    c1_ = c2_ = 0.0;
    for (const Chunk& ch : chunks) {
        for (size_t i = 0; i < ch.t2.size(); ++i) {
            t2pts_.push_back(ch.t2[i]);
            dstar_.push_back(ch.p1[i]);
            curv_.push_back(ch.p2[i]);
            sum_.push_back(static_cast<double>(ch.p1[i]) + ch.p2[i]);
            abs_sum_.push_back(static_cast<double>(ch.p1[i]) + std::abs(ch.p2[i]));
        }
        c1_ = std::max(c1_, ch.c1);
        c2_ = std::max(c2_, ch.c2);
    }
}

SekibunValue SekibunTable::value(double m) const {
    SekibunValue out;
    out.m = m;
    out.log_prefactor = m * r_ * r_ / 4.0;
    double s = 0.0, scale = 0.0, d1 = 0.0, d2 = 0.0;
    for (size_t i = 0; i < sum_.size(); ++i) {
        const double wgt = std::exp(-m * static_cast<double>(t2pts_[i]));
        s += sum_[i] * wgt;
        scale += abs_sum_[i] * wgt;
        d1 += static_cast<double>(dstar_[i]) * wgt;
        d2 += static_cast<double>(curv_[i]) * wgt;
    }
    out.scaled = s * cell_;
    out.scale = scale * cell_;
    out.dstar_scaled = d1 * cell_;
    out.curv_scaled = d2 * cell_;
    return out;
}

namespace {

int default_points(int n) { return n == 1 ? 256 : 64; }

void check_resolution(const SekibunValue& hi, const SekibunValue& lo) {
    const double ref = std::max(hi.scale, 1e-300);
    if (std::abs(hi.scaled - lo.scaled) > 0.02 * ref)
        throw ResolutionError("sekibun_functional: quadrature not resolved (m = " +
                              std::to_string(hi.m) + ")");
}

} // namespace

SekibunValue sekibun_functional(const SymFormNQ& g, const ProbeConfig& cfg, const Weight& w,
                                double c, double m, const SekibunOptions& opt) {
    const int p = opt.points_per_axis > 0 ? opt.points_per_axis : default_points(cfg.n);
    const SekibunTable table(g, cfg, w, c, p);
    const SekibunValue hi = table.value(m);
    if (opt.resolution_check) {
        const SekibunTable coarse(g, cfg, w, c, p / 2);
        check_resolution(hi, coarse.value(m));
    }
    return hi;
}

ProbeReport run_probe_schedule(const ProbeForm& form, const ProbeConfig& cfg, const Weight& w,
                               const SekibunOptions& opt) {
    const int p = opt.points_per_axis > 0 ? opt.points_per_axis : default_points(cfg.n);
    const SekibunTable table(form.g, cfg, w, cfg.c, p);
    std::optional<SekibunTable> coarse;
    if (opt.resolution_check) coarse.emplace(form.g, cfg, w, cfg.c, p / 2);

    ProbeReport rep;
    rep.cfg = cfg;
    rep.c1 = table.dstar_sup();
    rep.c2 = table.curv_abs_sup();
    for (double m : cfg.m_schedule) {
        const SekibunValue v = table.value(m);
        if (coarse) check_resolution(v, coarse->value(m));
        rep.trace.push_back(v);
        if (v.scaled < -1e-6 * v.scale) {
            rep.m_star = m;
            break; // the functional went negative; later m only grow the violation
        }
    }
    return rep;
}

} // namespace l2pos::probes
