#pragma once

// Principal-branch Lambert W on [0, inf) and the comparison functions built
// from it:
//
//   f(s) = (mu0 - s)^2 / W(C1 (mu0 - s)^2),   C1 = e^{mu0^2/f0} / f0,
//   g(s) = e^{3B(mu0 - s)} f(s),
//
// on s in [0, mu0].  f solves df/ds = -2 (mu0-s) f / ((mu0-s)^2 + f) with
// f(0) = f0 and limit f(mu0) = f0 e^{-mu0^2/f0}; g is a subsolution of the
// same law with the extra -3Bg drift.  Along a trajectory with decreasing
// zero mode, s = mu0 - mu(t) and V(s) = nu(t); g(mu0) is then a positive
// lower bound for nu at the first time mu reaches zero.

#include <vector>

#include "tnls/analysis.hpp"
#include "tnls/integrate.hpp"

namespace tnls {

// Principal branch W_0 for x >= 0: returns w >= 0 with w e^w = x to ~1e-15
// relative accuracy.  Halley iteration on w + log w - log x, seeded from
// log(1 + x); overflow-safe for the whole double range.
double lambert_w0(double x);

struct CurvePoint {
    double s;
    double f;
    double g;
};

struct ComparisonCurve {
    double mu0 = 0.0;
    double f0 = 0.0;
    double B = 0.0;
    double C1 = 0.0;
    std::vector<CurvePoint> samples;  // uniform s grid over [0, mu0], both endpoints

    double f_at(double s) const;  // endpoint s = mu0 via the closed-form limit
    double g_at(double s) const;
};

// Samples f and g on a uniform grid of n_samples points covering [0, mu0].
// Throws BarrierOverflow when e^{mu0^2/f0} leaves the double range, reporting
// the smallest admissible f0.
ComparisonCurve barrier_curve(double mu0, double f0, double B, int n_samples);

struct BarrierOdeReport {
    double max_f_residual;   // |df/ds - rhs| over interior samples
    double min_g_slack;      // min of rhs_g - dg/ds (>= -1e-8 required)
    double f_endpoint_err;   // |f(mu0) - f0 e^{-mu0^2/f0}|
    double f_start_err;      // |f(0) - f0|
    bool ok;
};

// Finite-difference check of the comparison ODE and the g differential
// inequality on the curve's interior samples.
BarrierOdeReport verify_barrier_ode(const ComparisonCurve& curve);

struct ComparisonReport {
    double mu0 = 0.0;
    double delta = 0.0;
    double f0 = 0.0;         // 0.9 e^{-3 B mu0} delta
    double B = 0.0;
    double t0 = 0.0;         // first zero of mu
    double nu_at_t0 = 0.0;
    double g_at_mu0 = 0.0;
    bool terminal_ok = false;   // nu(T0) >= g(mu0)
    bool pointwise_ok = false;  // V(s_i) >= g(s_i) at every checked sample
    double min_margin = 0.0;    // min over samples of V(s) - g(s)
    int n_checked = 0;
};

// Reparameterizes nu along the trajectory as V(s), s = mu0 - mu(t), and
// compares against the barrier with f0 = 0.9 e^{-3 B mu0} delta.  Requires a
// regime trajectory that reaches mu = 0 and a positive delta.
ComparisonReport comparison_lower_bound(const TrajectoryRecord& traj,
                                        const LemmaConstants& consts, double delta);

}  // namespace tnls
