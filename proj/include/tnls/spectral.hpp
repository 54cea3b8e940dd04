#pragma once

// State representation and scalar diagnostics for the truncated Fourier mode
// system of i u_t + u_xx = |u|^2 on the 2*pi-periodic line.
//
// The solution is written u(t,x) = sum_k u_k(t) e^{ikx - ik^2 t}; the u_k are
// the rotating-frame coefficients stored here, related to the plain Fourier
// coefficients by u_k(t) = uhat(t,k) e^{ik^2 t}.  All sums are Galerkin
// truncated to |k| <= K, and dropped index pairs are dropped (no padding).

#include <complex>
#include <vector>

#include "tnls/errors.hpp"

namespace tnls {

using Complex = std::complex<double>;

struct SpectralState {
    double t = 0.0;
    int K = 0;
    std::vector<Complex> coeffs;  // index k+K for k in [-K, K]

    SpectralState() = default;
    SpectralState(double time, int truncation)
        : t(time), K(truncation), coeffs(2 * static_cast<size_t>(truncation) + 1) {
        if (truncation < 1) throw InvalidState("SpectralState: K must be >= 1");
    }

    Complex& mode(int k) { return coeffs[static_cast<size_t>(k + K)]; }
    const Complex& mode(int k) const { return coeffs[static_cast<size_t>(k + K)]; }

    int size() const { return 2 * K + 1; }

    bool all_finite() const;
    // Throws InvalidState on wrong coefficient count or non-finite amplitudes.
    void check_valid() const;
};

// Scalar observables of one state.  mu is the imaginary part of the zero mode,
// nu the oscillation energy sum_{k != 0} |u_k|^2, nu_K its partial sum over
// 0 < |k| <= K_partial, and r_K the resonant remainder
//   R_K = Im( sum_{0<|k|<=K_partial} sum_{l != 0} conj(u_k u_l) u_{k+l} e^{-2ikl t} )
// with both l and k+l kept inside the truncation.
struct Diagnostics {
    double t = 0.0;
    double mu = 0.0;
    double re_u0 = 0.0;
    double nu = 0.0;
    double nu_K = 0.0;
    double r_K = 0.0;
    double l2_norm = 0.0;
};

// Uniform physical-space samples on [0, 2*pi), M points, spacing 2*pi/M.
struct PhysicalField {
    std::vector<Complex> samples;

    int grid_size() const { return static_cast<int>(samples.size()); }
    double dx() const;
};

// Plain Fourier coefficients uhat(t,k) = u_k(t) e^{-ik^2 t}, same k+K layout.
std::vector<Complex> to_lab_frame(const SpectralState& state);

// Inverse of to_lab_frame.
SpectralState from_lab_frame(const std::vector<Complex>& lab_coeffs, int K, double t);

// samples[j] = sum_k uhat(t,k) e^{ik x_j}, x_j = 2*pi*j/M.  Requires M >= 2K+1.
PhysicalField synthesize(const SpectralState& state, int grid_size);

// Trapezoidal (exact for trig polynomials) Fourier analysis of a sampled field,
// returned as a rotating-frame state at time t.  Requires M >= 2K+1.
SpectralState analyze(const PhysicalField& field, int K, double t);

// Mode-k coefficient of |u|^2 in the rotating frame:
//   n_k = sum_l conj(u_l) u_{k+l} e^{-2ikl t},
// direct O(K^2) summation in ascending l order, pairs outside [-K,K] dropped.
std::vector<Complex> nonlinearity_modes(const SpectralState& state);

Diagnostics diagnostics(const SpectralState& state, int K_partial);
Diagnostics diagnostics(const SpectralState& state);  // K_partial = K

// sum_{k != 0} |u_k|^2
double oscillation_energy(const SpectralState& state);

// max_k |u_k|
double max_mode_abs(const SpectralState& state);

// Convenience constructors used by scenarios and tests.
SpectralState constant_state(int K, Complex u0);
// i*mu0 plus u_{+1} = u_{-1} = eps (so nu0 = 2 eps^2).
SpectralState seeded_pair_state(int K, double mu0, double eps);

}  // namespace tnls
