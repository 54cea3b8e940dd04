#include "tnls/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

namespace tnls {

namespace {

using Rhs = std::function<void(double, const std::vector<Complex>&, std::vector<Complex>&)>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller parameters for an order-5 pair.
constexpr double kSafety = 0.9;
constexpr double kAlpha = 0.17;
constexpr double kBeta = 0.04;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 5.0;
constexpr double kStepFloor = 1e-14;  // relative step-collapse limit

double max_abs(const std::vector<Complex>& y) {
    double m = 0.0;
    for (const Complex& v : y) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const std::vector<Complex>& y) {
    double s = 0.0;
    for (const Complex& v : y) s += std::norm(v);
    return std::sqrt(s);
}

bool all_finite(const std::vector<Complex>& y) {
    for (const Complex& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

// One integration context: workspace, controller memory, FSAL cache.
class Stepper {
  public:
    Stepper(Rhs rhs, const IntegratorConfig& cfg, size_t n)
        : rhs_(std::move(rhs)), cfg_(cfg) {
        for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_})
            v->resize(n);
    }

    enum class StepStatus { Accepted, Underflow };

    void prime(double t, const std::vector<Complex>& y) {
        rhs_(t, y, k1_);
        h_ = initial_step(t, y);
        errold_ = 1e-4;
    }

    // Advances (t, y) by one accepted step with endpoint at most t_stop.
    StepStatus step(double& t, std::vector<Complex>& y, double t_stop) {
        for (int attempt = 0; attempt < 400; ++attempt) {
            double h = std::min({h_, cfg_.max_step, t_stop - t});
            if (h < kStepFloor * std::max(1.0, std::abs(t))) return StepStatus::Underflow;
            const size_t n = y.size();
            const bool clipped = t_stop - t <= h * (1.0 + 1e-14);
            const double t_new = clipped ? t_stop : t + h;

            for (size_t i = 0; i < n; ++i) ytmp_[i] = y[i] + h * a21 * k1_[i];
            rhs_(t + c2 * h, ytmp_, k2_);
            for (size_t i = 0; i < n; ++i)
                ytmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
            rhs_(t + c3 * h, ytmp_, k3_);
            for (size_t i = 0; i < n; ++i)
                ytmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
            rhs_(t + c4 * h, ytmp_, k4_);
            for (size_t i = 0; i < n; ++i)
                ytmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
            rhs_(t + c5 * h, ytmp_, k5_);
            for (size_t i = 0; i < n; ++i)
                ytmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] +
                                       a64 * k4_[i] + a65 * k5_[i]);
            rhs_(t + h, ytmp_, k6_);
            for (size_t i = 0; i < n; ++i)
                ytmp_[i] = y[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] +
                                       b5 * k5_[i] + b6 * k6_[i]);
            rhs_(t_new, ytmp_, k7_);

            double err = 0.0;
            bool finite = true;
            for (size_t i = 0; i < n; ++i) {
                const Complex e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] +
                                       e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
                const double sc = cfg_.abs_tol +
                                  cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(ytmp_[i]));
                const double q = std::abs(e) / sc;
                if (!std::isfinite(q)) finite = false;
                err += q * q;
            }
            err = std::sqrt(err / static_cast<double>(n));

            if (!finite || !all_finite(ytmp_)) {
                h_ = h * kFacMin;  // retry smaller; divergence is decided by the caller
                continue;
            }
            if (err <= 1.0) {
                double fac = kSafety * std::pow(err > 0 ? err : 1e-16, -kAlpha) *
                             std::pow(errold_, kBeta);
                fac = std::clamp(fac, kFacMin, kFacMax);
                h_ = h * fac;
                errold_ = std::max(err, 1e-4);
                t = t_new;
                y.swap(ytmp_);
                k1_.swap(k7_);  // FSAL
                return StepStatus::Accepted;
            }
            h_ = h * std::clamp(kSafety * std::pow(err, -0.2), kFacMin, 1.0);
        }
        return StepStatus::Underflow;
    }

  private:
    double initial_step(double t, const std::vector<Complex>& y) {
        const size_t n = y.size();
        auto scaled_norm = [&](const std::vector<Complex>& v) {
            double s = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(y[i]);
                const double q = std::abs(v[i]) / sc;
                s += q * q;
            }
            return std::sqrt(s / static_cast<double>(n));
        };
        const double d0 = scaled_norm(y);
        const double d1 = scaled_norm(k1_);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, cfg_.max_step);
        for (size_t i = 0; i < n; ++i) ytmp_[i] = y[i] + h0 * k1_[i];
        rhs_(t + h0, ytmp_, k2_);
        for (size_t i = 0; i < n; ++i) k2_[i] = (k2_[i] - k1_[i]) / h0;
        const double d2 = scaled_norm(k2_);
        const double dm = std::max(d1, d2);
        const double h1 = (dm <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                        : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, cfg_.max_step});
    }

    Rhs rhs_;
    IntegratorConfig cfg_;
    std::vector<Complex> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_;
    double h_ = 1e-6;
    double errold_ = 1e-4;
};

struct ProbeResult {
    double t;
    std::vector<Complex> y;
    bool reached;  // hit t_target (as opposed to diverging or collapsing on the way)
};

// Fresh integration from (t_from, y_from) to t_target, stopping early if the
// norm threshold is hit or the step collapses.  Candidate event times are
// always evaluated with genuinely integrated states.
ProbeResult probe_advance(const Rhs& rhs, const IntegratorConfig& cfg, double t_from,
                          const std::vector<Complex>& y_from, double t_target) {
    ProbeResult r{t_from, y_from, true};
    if (t_target <= t_from) return r;
    Stepper stepper(rhs, cfg, y_from.size());
    stepper.prime(r.t, r.y);
    while (r.t < t_target) {
        auto status = stepper.step(r.t, r.y, t_target);
        if (status != Stepper::StepStatus::Accepted ||
            !all_finite(r.y) || max_abs(r.y) >= cfg.blowup_threshold) {
            r.reached = false;
            return r;
        }
    }
    return r;
}

std::string format_detail(const char* fmt, double a, double b, double c) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

}  // namespace

void IntegratorConfig::validate() const {
    const bool positive = rel_tol > 0 && abs_tol > 0 && max_step > 0 &&
                          blowup_threshold > 0 && max_time > 0;
    if (!positive) throw InvalidState("IntegratorConfig: all fields must be positive");
    if (rel_tol < 1e-14 || abs_tol < 1e-14)
        throw InvalidState("IntegratorConfig: tolerances below 1e-14 are not resolvable");
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::MuZeroCrossing: return "mu_zero_crossing";
        case EventKind::Blowup: return "blowup";
        case EventKind::SuspectedBlowup: return "suspected_blowup";
        case EventKind::MaxTimeReached: return "max_time_reached";
    }
    return "unknown";
}

const Event* TrajectoryRecord::find_event(EventKind kind) const {
    for (const Event& e : events)
        if (e.kind == kind) return &e;
    return nullptr;
}

const Sample* TrajectoryRecord::event_sample_at(double time) const {
    for (const Sample& s : event_samples)
        if (s.t == time) return &s;
    return nullptr;
}

std::vector<double> uniform_times(double t0, double t1, int n) {
    if (n < 2 || t1 <= t0) throw InvalidState("uniform_times: need n >= 2, t1 > t0");
    std::vector<double> ts(static_cast<size_t>(n));
    const double dt = (t1 - t0) / (n - 1);
    for (int i = 0; i < n; ++i) ts[static_cast<size_t>(i)] = t0 + dt * i;
    ts.back() = t1;
    return ts;
}

TrajectoryRecord integrate(const SpectralState& initial, SystemForm form,
                           const IntegratorConfig& config,
                           std::span<const double> sample_times) {
    initial.check_valid();
    config.validate();
    const int K = initial.K;
    const double t0 = initial.t;
    if (config.max_time <= t0)
        throw InvalidState("integrate: max_time must exceed the initial time");
    for (size_t i = 0; i < sample_times.size(); ++i) {
        const bool increasing = i == 0 || sample_times[i] > sample_times[i - 1];
        if (!increasing || sample_times[i] < t0 || sample_times[i] > config.max_time)
            throw InvalidState("integrate: sample times must increase within [t0, max_time]");
    }

    const bool lab = form == SystemForm::LabFrame;
    Rhs rhs = [K, lab](double t, const std::vector<Complex>& y, std::vector<Complex>& dy) {
        if (lab)
            rhs_lab_into(t, y, K, dy);
        else
            rhs_rotating_into(t, y, K, dy);
    };

    TrajectoryRecord record;
    auto make_sample = [&](double t, const std::vector<Complex>& y) {
        SpectralState s(t, K);
        if (lab)
            s = from_lab_frame(y, K, t);
        else
            s.coeffs = y;
        Diagnostics d = diagnostics(s);
        return Sample{t, std::move(s), d};
    };

    std::vector<Complex> y = lab ? to_lab_frame(initial) : initial.coeffs;
    double t = t0;
    const double initial_l2 = l2_norm(y);

    size_t next_sample = 0;
    if (sample_times.empty() || sample_times[0] == t0) {
        record.samples.push_back(make_sample(t0, y));
        if (!sample_times.empty()) next_sample = 1;
    }

    Stepper stepper(rhs, config, y.size());
    stepper.prime(t, y);

    double mu_prev = y[static_cast<size_t>(K)].imag();
    bool mu_crossed = mu_prev <= 0.0;
    auto event_width_tol = [&](double at) {
        return config.rel_tol * std::max(1.0, std::abs(at));
    };

    while (t < config.max_time) {
        const double t_stop = (next_sample < sample_times.size())
                                  ? sample_times[next_sample]
                                  : config.max_time;
        const double t_before = t;
        const std::vector<Complex> y_before = y;

        auto status = stepper.step(t, y, t_stop);
        if (status != Stepper::StepStatus::Accepted) {
            record.events.push_back(
                {EventKind::SuspectedBlowup, t_before,
                 format_detail("step collapsed below %.1e at t=%.17g, max|u|=%.6e "
                               "below threshold", kStepFloor, t_before, max_abs(y_before))});
            return record;
        }

        // Divergence: bracket the threshold crossing inside the step by probing
        // re-integrations from the last accepted state below threshold.
        if (!all_finite(y) || max_abs(y) >= config.blowup_threshold) {
            double lo = t_before, hi = t;
            std::vector<Complex> y_lo = y_before;
            for (int it = 0; it < 80 && (hi - lo) > event_width_tol(hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                ProbeResult p = probe_advance(rhs, config, t_before, y_before, mid);
                if (p.reached && max_abs(p.y) < config.blowup_threshold) {
                    lo = mid;
                    y_lo = std::move(p.y);
                } else {
                    hi = p.reached ? mid : std::min(mid, p.t);
                }
            }
            record.events.push_back(
                {EventKind::Blowup, lo,
                 format_detail("max|u|=%.6e at threshold %.3e, bracket width %.3e",
                               max_abs(y_lo), config.blowup_threshold, hi - lo)});
            record.event_samples.push_back(make_sample(lo, y_lo));
            return record;
        }

        const double mu_new = y[static_cast<size_t>(K)].imag();
        const double l2 = l2_norm(y);

        // The zero-mode mean is monotone non-increasing for this nonlinearity.
        if (mu_new > mu_prev + 1e-12 * std::max(1.0, l2))
            throw InvariantViolation("integrate: mu increased along an accepted step");
        // mu and nu cannot vanish together unless the data was zero (skipped for
        // data already at roundoff scale, where the test is meaningless).
        if (initial_l2 > 1e-11) {
            const double nu = l2 * l2 - std::norm(y[static_cast<size_t>(K)]);
            if (std::abs(mu_new) <= 1e-12 &&
                std::abs(y[static_cast<size_t>(K)].real()) <= 1e-12 && nu <= 1e-12)
                throw InvariantViolation(
                    "integrate: zero mode and oscillation vanished simultaneously");
        }

        if (!mu_crossed && mu_prev > 0.0 && mu_new <= 0.0) {
            mu_crossed = true;
            double lo = t_before, hi = t;
            while (hi - lo > event_width_tol(hi)) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                ProbeResult p = probe_advance(rhs, config, t_before, y_before, mid);
                if (!p.reached) break;  // cannot happen away from divergence
                if (p.y[static_cast<size_t>(K)].imag() > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            const double t_event = 0.5 * (lo + hi);
            ProbeResult at = probe_advance(rhs, config, t_before, y_before, t_event);
            Sample es = make_sample(t_event, at.y);
            record.events.push_back(
                {EventKind::MuZeroCrossing, t_event,
                 format_detail("bracket width %.3e, nu=%.17g, mu=%.3e", hi - lo,
                               es.diag.nu, es.diag.mu)});
            record.event_samples.push_back(std::move(es));
        }
        mu_prev = mu_new;

        if (next_sample < sample_times.size() && t == sample_times[next_sample]) {
            record.samples.push_back(make_sample(t, y));
            ++next_sample;
        } else if (sample_times.empty()) {
            record.samples.push_back(make_sample(t, y));
        }
    }

    record.events.push_back({EventKind::MaxTimeReached, config.max_time, ""});
    return record;
}

std::optional<MuZeroInfo> locate_mu_zero(const TrajectoryRecord& traj) {
    if (const Event* e = traj.find_event(EventKind::MuZeroCrossing)) {
        if (const Sample* s = traj.event_sample_at(e->time))
            return MuZeroInfo{e->time, s->diag.nu};
        return MuZeroInfo{e->time, 0.0};
    }
    for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const Diagnostics& a = traj.samples[i].diag;
        const Diagnostics& b = traj.samples[i + 1].diag;
        if (a.mu > 0.0 && b.mu <= 0.0) {
            const double w = a.mu / (a.mu - b.mu);
            return MuZeroInfo{a.t + w * (b.t - a.t), a.nu + w * (b.nu - a.nu)};
        }
    }
    return std::nullopt;
}

}  // namespace tnls
