#pragma once

// Executable replay of the contradiction mechanism: build the cutoff-capped
// monomial probe form at a point where the eigenvalue-sum condition fails,
// then drive the functional
//
//   R(m) = int |D'* g|^2 e^{-m psi} dV + int <([iTheta,Lambda]-c) g, g> e^{-m psi} dV,
//
// psi = |zeta|^2 - r^2/4, over a geometric m-schedule until it turns negative.
// R(m) overflows doubles long before m reaches 2^14 (the prefactor is
// e^{m r^2/4}), so every reported value is the rescaled
// S(m) = R(m) e^{-m r^2/4}, which has the same sign; the log-prefactor is
// carried alongside.

#include <optional>

#include "l2pos/forms.hpp"
#include "l2pos/symbolic.hpp"
#include "l2pos/weight.hpp"

namespace l2pos::probes {

using geometry::Point;
using geometry::Weight;

// Smooth radial bump: 1 on [0, r/2], exp(1 - 1/(1-s^2)) with s = 2t/r - 1 on
// (r/2, r), 0 beyond; closed-form derivatives up to third order.
class Cutoff {
  public:
    explicit Cutoff(double r);

    double radius() const { return r_; }
    double value(double t) const { return d(0, t); }
    // k-th derivative, k <= 3
    double d(int k, double t) const;

    std::shared_ptr<const forms::RadialProfile> profile() const;

  private:
    double r_;
};

struct ProbeConfig {
    int n = 0, q = 0;
    double r = 0.0;     // bump radius actually used (after any shrinking)
    double delta = 0.0; // certified margin: <([iTheta,Lambda]-c)F, F> < -delta on the ball
    double c = 0.0;
    Point witness;
    core::ComplexMatrix rotation; // z = witness + rotation * zeta, columns eigenvectors
    core::MultiIndex violating_subset; // ascending-eigenvalue positions, (1..q)
    std::vector<double> m_schedule;
};

std::vector<double> default_m_schedule(); // 1, 2, 4, ..., 2^14

// The probe pair in rotated coordinates: v = (cutoff * conj(zeta_q)) on the
// index set {1..q-1} and g = dbar v; g has coefficient 1 on {1..q} inside the
// plateau. Independent of any weight.
struct ProbeForm {
    forms::SymFormNQ g;
    std::shared_ptr<Cutoff> chi;
    forms::SymFormNQ v; // the potential, for discrete cross-checks
};

ProbeForm make_probe_form(int n, int q, double r);

// Certify a genuine violation of the (q, c) eigenvalue-sum condition at the
// witness and build the probe there. Dense low-discrepancy sampling on the
// ball backs the margin delta; the radius halves (up to 6 times) when the
// margin cannot be certified, then the construction fails.
std::pair<ProbeForm, ProbeConfig> build_probe_form(const Weight& w, int q, double c,
                                                   const Point& witness, double r);

struct SekibunValue {
    double m = 0.0;
    double scaled = 0.0;        // S(m) = R(m) e^{-m r^2/4}
    double log_prefactor = 0.0; // m r^2 / 4
    double scale = 0.0;         // same quadrature with |integrand| values
    double dstar_scaled = 0.0;  // first-term share of S(m)
    double curv_scaled = 0.0;   // second-term share of S(m)
};

struct SekibunOptions {
    int points_per_axis = 0; // 0: 256 for n=1, 64 for n=2
    bool resolution_check = true;
};

// Quadrature tables for the functional: everything m-independent is
// accumulated once, binned by t^2 so the m-loop is cheap.
class SekibunTable {
  public:
    SekibunTable(const forms::SymFormNQ& g, const ProbeConfig& cfg, const Weight& w, double c,
                 int points_per_axis);

    SekibunValue value(double m) const;
    double dstar_sup() const { return c1_; }    // sup over the annulus of |D'* g|^2
    double curv_abs_sup() const { return c2_; } // sup over the annulus of |<(A-c)g,g>|

  private:
    double r_ = 0.0, cell_ = 0.0;
    double c1_ = 0.0, c2_ = 0.0;
    std::vector<float> t2pts_, dstar_, curv_; // per ball-interior quadrature point
    std::vector<double> sum_, abs_sum_;
};

// R(m) for a single m, rescaled as documented above. Runs the quadrature at
// the requested resolution and at half resolution; a relative shift above 2%
// of the scale raises ResolutionError.
SekibunValue sekibun_functional(const forms::SymFormNQ& g, const ProbeConfig& cfg, const Weight& w,
                                double c, double m, const SekibunOptions& opt = {});

struct ProbeReport {
    ProbeConfig cfg;
    std::vector<SekibunValue> trace;
    double c1 = 0.0; // sup |D'* g|^2 on the annulus (m-independent)
    double c2 = 0.0; // sup |<([iTheta,Lambda]-c) g, g>| on the annulus
    std::optional<double> m_star;

    bool negativity_found() const { return m_star.has_value(); }
};

// Evaluate the full schedule with a single quadrature pass (plus the half
// resolution control); early exit once the functional turns negative.
ProbeReport run_probe_schedule(const ProbeForm& form, const ProbeConfig& cfg, const Weight& w,
                               const SekibunOptions& opt = {});

} // namespace l2pos::probes
