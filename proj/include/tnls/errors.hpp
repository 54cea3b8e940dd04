#pragma once

#include <stdexcept>
#include <string>

namespace tnls {

// Grid has fewer points than modes it must resolve (M < 2K+1).
struct GridTooCoarse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The rotating-frame system requires Re u_0 = 0; raised when the zero mode
// carries a real part beyond tolerance.
struct RegimeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit constant solution evaluated at or beyond its finite lifespan.
struct PastBlowup : std::domain_error {
    using std::domain_error::domain_error;
};

// A check that needs the zero-mode crossing was given a trajectory without one.
struct NoZeroCrossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Richardson estimate of the quadrature error exceeds the residual target.
struct QuadratureTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration failed to converge; indicates a bug, not a data problem.
struct NoConvergence : std::logic_error {
    using std::logic_error::logic_error;
};

// A structural invariant of the mode system was observed broken at runtime.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Comparison-curve constant e^{mu0^2/f0}/f0 does not fit in double range.
// Carries the smallest admissible f0 for the requested mu0.
struct BarrierOverflow : std::range_error {
    BarrierOverflow(const std::string& msg, double f0_floor_)
        : std::range_error(msg), f0_floor(f0_floor_) {}
    double f0_floor;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tnls
