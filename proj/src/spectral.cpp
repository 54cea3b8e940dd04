#include "tnls/spectral.hpp"

#include <cmath>
#include <numbers>

namespace tnls {

namespace {

// l range such that both l and k+l lie in [-K, K].
inline void convolution_range(int k, int K, int& lo, int& hi) {
    lo = std::max(-K, -K - k);
    hi = std::min(K, K - k);
}

}  // namespace

bool SpectralState::all_finite() const {
    for (const Complex& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return std::isfinite(t);
}

void SpectralState::check_valid() const {
    if (K < 1) throw InvalidState("SpectralState: K must be >= 1");
    if (static_cast<int>(coeffs.size()) != 2 * K + 1)
        throw InvalidState("SpectralState: coefficient count != 2K+1");
    if (!all_finite())
        throw InvalidState("SpectralState: non-finite amplitude; diverging states "
                           "must be reported as blow-up events, not states");
}

double PhysicalField::dx() const {
    return 2.0 * std::numbers::pi / static_cast<double>(samples.size());
}

std::vector<Complex> to_lab_frame(const SpectralState& state) {
    state.check_valid();
    std::vector<Complex> lab(state.coeffs.size());
    for (int k = -state.K; k <= state.K; ++k) {
        const double phase = -static_cast<double>(k) * k * state.t;
        lab[static_cast<size_t>(k + state.K)] = state.mode(k) * std::polar(1.0, phase);
    }
    return lab;
}

SpectralState from_lab_frame(const std::vector<Complex>& lab_coeffs, int K, double t) {
    if (static_cast<int>(lab_coeffs.size()) != 2 * K + 1)
        throw InvalidState("from_lab_frame: coefficient count != 2K+1");
    SpectralState state(t, K);
    for (int k = -K; k <= K; ++k) {
        const double phase = static_cast<double>(k) * k * t;
        state.mode(k) = lab_coeffs[static_cast<size_t>(k + K)] * std::polar(1.0, phase);
    }
    return state;
}

PhysicalField synthesize(const SpectralState& state, int grid_size) {
    state.check_valid();
    if (grid_size < 2 * state.K + 1)
        throw GridTooCoarse("synthesize: need M >= 2K+1 grid points");
    const std::vector<Complex> lab = to_lab_frame(state);
    PhysicalField field;
    field.samples.resize(static_cast<size_t>(grid_size));
    const double dx = 2.0 * std::numbers::pi / grid_size;
    for (int j = 0; j < grid_size; ++j) {
        const double x = dx * j;
        Complex acc = 0.0;
        for (int k = -state.K; k <= state.K; ++k)
            acc += lab[static_cast<size_t>(k + state.K)] * std::polar(1.0, k * x);
        field.samples[static_cast<size_t>(j)] = acc;
    }
    return field;
}

SpectralState analyze(const PhysicalField& field, int K, double t) {
    const int M = field.grid_size();
    if (M < 2 * K + 1) throw GridTooCoarse("analyze: need M >= 2K+1 grid points");
    std::vector<Complex> lab(2 * static_cast<size_t>(K) + 1);
    const double dx = 2.0 * std::numbers::pi / M;
    for (int k = -K; k <= K; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < M; ++j)
            acc += field.samples[static_cast<size_t>(j)] * std::polar(1.0, -k * dx * j);
        lab[static_cast<size_t>(k + K)] = acc / static_cast<double>(M);
    }
    return from_lab_frame(lab, K, t);
}

std::vector<Complex> nonlinearity_modes(const SpectralState& state) {
    state.check_valid();
    const int K = state.K;
    std::vector<Complex> out(state.coeffs.size());
    for (int k = -K; k <= K; ++k) {
        int lo, hi;
        convolution_range(k, K, lo, hi);
        Complex acc = 0.0;
        for (int l = lo; l <= hi; ++l) {
            acc += std::conj(state.mode(l)) * state.mode(k + l) *
                   std::polar(1.0, -2.0 * k * l * state.t);
        }
        out[static_cast<size_t>(k + K)] = acc;
    }
    return out;
}

double oscillation_energy(const SpectralState& state) {
    // Pair-ascending order, shared with diagnostics() so that the partial sum
    // nu_K is an exact prefix of nu.
    double nu = 0.0;
    for (int k = 1; k <= state.K; ++k)
        nu += std::norm(state.mode(k)) + std::norm(state.mode(-k));
    return nu;
}

double max_mode_abs(const SpectralState& state) {
    double m = 0.0;
    for (const Complex& c : state.coeffs) m = std::max(m, std::abs(c));
    return m;
}

Diagnostics diagnostics(const SpectralState& state, int K_partial) {
    state.check_valid();
    if (K_partial < 1 || K_partial > state.K)
        throw InvalidState("diagnostics: need 0 < K_partial <= K");

    Diagnostics d;
    d.t = state.t;
    d.mu = state.mode(0).imag();
    d.re_u0 = state.mode(0).real();

    // One pair-ascending pass; nu_K is the running value after K_partial pairs,
    // so nu_K <= nu holds exactly.
    d.nu = 0.0;
    d.nu_K = 0.0;
    for (int k = 1; k <= state.K; ++k) {
        d.nu += std::norm(state.mode(k)) + std::norm(state.mode(-k));
        if (k == K_partial) d.nu_K = d.nu;
    }

    double total = 0.0;
    for (const Complex& c : state.coeffs) total += std::norm(c);
    d.l2_norm = std::sqrt(total);

    // Resonant remainder, k-outer ascending order.
    const int K = state.K;
    Complex acc = 0.0;
    for (int k = -K_partial; k <= K_partial; ++k) {
        if (k == 0) continue;
        int lo, hi;
        convolution_range(k, K, lo, hi);
        for (int l = lo; l <= hi; ++l) {
            if (l == 0) continue;
            acc += std::conj(state.mode(k) * state.mode(l)) * state.mode(k + l) *
                   std::polar(1.0, -2.0 * k * l * state.t);
        }
    }
    d.r_K = acc.imag();
    return d;
}

Diagnostics diagnostics(const SpectralState& state) { return diagnostics(state, state.K); }

SpectralState constant_state(int K, Complex u0) {
    SpectralState s(0.0, K);
    s.mode(0) = u0;
    return s;
}

SpectralState seeded_pair_state(int K, double mu0, double eps) {
    SpectralState s(0.0, K);
    s.mode(0) = Complex(0.0, mu0);
    s.mode(1) = eps;
    s.mode(-1) = eps;
    return s;
}

}  // namespace tnls
