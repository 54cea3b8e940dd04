#pragma once

// Adaptive time stepping for the truncated mode system with event detection:
// zero crossing of mu = Im u_0, divergence past a norm threshold, and step
// collapse.  Embedded Dormand-Prince 5(4) pair with a PI step controller.
//
// Stored states are always genuine integration results; when a sample grid or
// an event time is requested, steps are clipped (or re-run from the previous
// accepted state) so that no stored state is produced by interpolation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnls/dynamics.hpp"
#include "tnls/spectral.hpp"

namespace tnls {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1.0;
    double blowup_threshold = 1e8;  // max_k |u_k| level declaring divergence
    double max_time = 10.0;

    void validate() const;
};

enum class EventKind { MuZeroCrossing, Blowup, SuspectedBlowup, MaxTimeReached };

const char* to_string(EventKind kind);

struct Event {
    EventKind kind;
    double time;         // Blowup: last resolvable time below threshold (lower bound)
    std::string detail;
};

struct Sample {
    double t;
    SpectralState state;  // rotating frame
    Diagnostics diag;
};

struct TrajectoryRecord {
    std::vector<Sample> samples;        // strictly increasing times
    std::vector<Sample> event_samples;  // integrated states at located event times
    std::vector<Event> events;

    const Event* find_event(EventKind kind) const;
    const Sample* event_sample_at(double time) const;
};

// Integrates from initial.t until blow-up, step collapse, or config.max_time.
// With an empty sample grid every accepted step is recorded; otherwise exactly
// the requested times are recorded (strictly increasing, inside
// [initial.t, max_time]) by clipping steps onto them.
TrajectoryRecord integrate(const SpectralState& initial, SystemForm form,
                           const IntegratorConfig& config,
                           std::span<const double> sample_times = {});

struct MuZeroInfo {
    double t0;
    double nu;  // oscillation energy at the crossing
};

// First time mu reaches zero, with nu there; prefers the located event, falls
// back to a secant pass over the stored samples (exact for linear mu), absent
// if mu stayed positive.
std::optional<MuZeroInfo> locate_mu_zero(const TrajectoryRecord& traj);

// n equally spaced times covering [t0, t1], endpoints included.
std::vector<double> uniform_times(double t0, double t1, int n);

}  // namespace tnls
