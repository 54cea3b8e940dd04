#pragma once

// Right-hand sides of the two equivalent mode formulations of
// i u_t + u_xx = |u|^2 on [-K, K]:
//
//   rotating frame:  du_k/dt    = -i sum_l conj(u_l) u_{k+l} e^{-2ikl t}
//   lab frame:       duhat_k/dt = -i k^2 uhat_k - i sum_l conj(uhat_l) uhat_{k+l}
//
// In the rotating frame the zero mode obeys d(mu)/dt = -mu^2 - nu with
// Re u_0 = 0 preserved exactly; the form is only valid in that regime and
// checks it.  The lab form makes no regime assumption.

#include "tnls/spectral.hpp"

namespace tnls {

enum class SystemForm { RotatingFrame, LabFrame };

inline constexpr double kRegimeTolerance = 1e-10;  // |Re u_0| allowed in rotating form

// Rotating-frame derivative; throws RegimeViolation if |Re u_0| > 1e-10.
// The k = 0 component is exactly imaginary: i * (-mu^2 - nu).
std::vector<Complex> rhs_rotating(const SpectralState& state);

// Lab-frame derivative of plain Fourier coefficients (k+K layout, K inferred
// from the vector length).  Valid for arbitrary complex zero mode.
std::vector<Complex> rhs_lab(const std::vector<Complex>& lab_coeffs, double t);

// Allocation-free forms used by the integrator.
void rhs_rotating_into(double t, const std::vector<Complex>& y, int K,
                       std::vector<Complex>& dy);
void rhs_lab_into(double t, const std::vector<Complex>& y, int K,
                  std::vector<Complex>& dy);

}  // namespace tnls
