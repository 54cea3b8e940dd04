#include "tnls/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tnls {

double lambert_w0(double x) {
    if (!(x >= 0.0)) throw InvalidState("lambert_w0: domain is x >= 0");
    if (x == 0.0) return 0.0;

    // Work with r(w) = w + log(w) - log(x), whose root is W(x); this form has
    // no exponential and cannot overflow.  r' = 1 + 1/w, r'' = -1/w^2.
    const double logx = std::log(x);
    double w = x < 1.0 ? x * (1.0 - x) : std::log1p(x);
    if (x > std::exp(1.0)) {
        const double l1 = logx, l2 = std::log(logx);
        w = l1 - l2 + l2 / l1;  // asymptotic seed
    }
    w = std::max(w, 1e-300);

    for (int it = 0; it < 50; ++it) {
        const double r = w + std::log(w) - logx;
        const double rp = 1.0 + 1.0 / w;
        const double rpp = -1.0 / (w * w);
        const double step = r / (rp - 0.5 * r * rpp / rp);  // Halley
        const double w_next = w - step;
        w = w_next > 0.0 ? w_next : 0.5 * w;  // keep the iterate positive
        if (std::abs(step) <= 2e-16 * (1.0 + std::abs(w))) return w;
    }
    throw NoConvergence("lambert_w0: Halley iteration failed to converge");
}

double ComparisonCurve::f_at(double s) const {
    if (s < 0.0 || s > mu0) throw InvalidState("ComparisonCurve: s outside [0, mu0]");
    const double d = mu0 - s;
    if (d == 0.0) return f0 * std::exp(-mu0 * mu0 / f0);  // closed-form limit
    return d * d / lambert_w0(C1 * d * d);
}

double ComparisonCurve::g_at(double s) const {
    return std::exp(3.0 * B * (mu0 - s)) * f_at(s);
}

ComparisonCurve barrier_curve(double mu0, double f0, double B, int n_samples) {
    if (mu0 <= 0.0 || f0 <= 0.0 || B <= 0.0)
        throw InvalidState("barrier_curve: mu0, f0, B must be positive");
    if (n_samples < 16) throw InvalidState("barrier_curve: need n_samples >= 16");
    const double expo = mu0 * mu0 / f0;
    if (expo >= 700.0) {  // e^700 already leaves the double range once divided by f0
        char msg[160];
        const double floor = mu0 * mu0 / 700.0;
        std::snprintf(msg, sizeof(msg),
                      "barrier_curve: e^(mu0^2/f0) overflows; need f0 > %.6e", floor);
        throw BarrierOverflow(msg, floor);
    }

    ComparisonCurve curve;
    curve.mu0 = mu0;
    curve.f0 = f0;
    curve.B = B;
    curve.C1 = std::exp(expo) / f0;
    curve.samples.reserve(static_cast<size_t>(n_samples));
    const double ds = mu0 / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double s = (i == n_samples - 1) ? mu0 : ds * i;
        const double f = curve.f_at(s);
        curve.samples.push_back({s, f, std::exp(3.0 * B * (mu0 - s)) * f});
    }
    return curve;
}

BarrierOdeReport verify_barrier_ode(const ComparisonCurve& curve) {
    if (curve.samples.size() < 64)
        throw InvalidState("verify_barrier_ode: curve needs >= 64 samples");
    BarrierOdeReport rep{0.0, std::numeric_limits<double>::infinity(), 0.0, 0.0, false};

    // Central differences with an analytic re-evaluation at s +- h; h sits at
    // the O(h^2) truncation / roundoff crossover.
    const double h = std::cbrt(2.2e-16) * std::max(curve.mu0, 1.0e-3);
    const size_t n = curve.samples.size();
    for (size_t i = 1; i + 1 < n; ++i) {
        const double s = curve.samples[i].s;
        if (s - h <= 0.0 || s + h >= curve.mu0) continue;
        const double d = curve.mu0 - s;

        const double fp = (curve.f_at(s + h) - curve.f_at(s - h)) / (2.0 * h);
        const double f = curve.samples[i].f;
        const double f_rhs = -2.0 * d * f / (d * d + f);
        rep.max_f_residual = std::max(rep.max_f_residual, std::abs(fp - f_rhs));

        const double gp = (curve.g_at(s + h) - curve.g_at(s - h)) / (2.0 * h);
        const double g = curve.samples[i].g;
        const double g_rhs = -2.0 * d * g / (d * d + g) - 3.0 * curve.B * g;
        rep.min_g_slack = std::min(rep.min_g_slack, g_rhs - gp);
    }

    rep.f_start_err = std::abs(curve.samples.front().f - curve.f0);
    rep.f_endpoint_err = std::abs(curve.samples.back().f -
                                  curve.f0 * std::exp(-curve.mu0 * curve.mu0 / curve.f0));
    rep.ok = rep.max_f_residual <= 1e-6 && rep.min_g_slack >= -1e-8 &&
             rep.f_start_err <= 1e-10 && rep.f_endpoint_err <= 1e-10;
    return rep;
}

ComparisonReport comparison_lower_bound(const TrajectoryRecord& traj,
                                        const LemmaConstants& consts, double delta) {
    if (traj.samples.empty()) throw InvalidState("comparison_lower_bound: empty trajectory");
    if (delta <= 0.0) throw InvalidState("comparison_lower_bound: delta must be positive");
    const Diagnostics& first = traj.samples.front().diag;
    if (std::abs(first.re_u0) > kRegimeTolerance || first.mu <= 0.0)
        throw RegimeViolation("comparison_lower_bound: trajectory must start with "
                              "Re u_0 = 0 and mu > 0");
    auto mz = locate_mu_zero(traj);
    if (!mz.has_value())
        throw NoZeroCrossing("comparison_lower_bound: mu never reached zero");

    ComparisonReport rep;
    rep.mu0 = first.mu;
    rep.delta = delta;
    rep.B = consts.B;
    rep.f0 = 0.9 * std::exp(-3.0 * consts.B * rep.mu0) * delta;  // strictly admissible
    rep.t0 = mz->t0;
    rep.nu_at_t0 = mz->nu;

    ComparisonCurve curve = barrier_curve(rep.mu0, rep.f0, consts.B, 257);
    rep.g_at_mu0 = curve.g_at(rep.mu0);
    rep.terminal_ok = rep.nu_at_t0 >= rep.g_at_mu0;

    rep.pointwise_ok = true;
    rep.min_margin = std::numeric_limits<double>::infinity();
    double s_prev = -std::numeric_limits<double>::infinity();
    for (const Sample& sample : traj.samples) {
        if (sample.t > rep.t0 || sample.diag.mu < 0.0) break;
        const double s = rep.mu0 - sample.diag.mu;  // strictly increasing while nu > 0
        if (s < 0.0 || s > rep.mu0) continue;
        if (s <= s_prev)
            throw InvariantViolation("comparison_lower_bound: s = mu0 - mu(t) not increasing");
        s_prev = s;
        const double margin = sample.diag.nu - curve.g_at(s);
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin < 0.0) rep.pointwise_ok = false;
        ++rep.n_checked;
    }
    return rep;
}

}  // namespace tnls
