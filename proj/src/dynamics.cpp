#include "tnls/dynamics.hpp"

#include <cmath>

namespace tnls {

void rhs_rotating_into(double t, const std::vector<Complex>& y, int K,
                       std::vector<Complex>& dy) {
    if (std::abs(y[static_cast<size_t>(K)].real()) > kRegimeTolerance)
        throw RegimeViolation("rotating form requires Re u_0 = 0 (|Re u_0| > 1e-10)");
    dy.resize(y.size());
    for (int k = -K; k <= K; ++k) {
        const int lo = std::max(-K, -K - k);
        const int hi = std::min(K, K - k);
        if (k == 0) {
            // sum_l |u_l|^2 is real by construction, so u_0 stays imaginary
            // and Im u_0 follows d(mu)/dt = -mu^2 - nu.
            double total = 0.0;
            for (int l = lo; l <= hi; ++l) total += std::norm(y[static_cast<size_t>(l + K)]);
            dy[static_cast<size_t>(K)] = Complex(0.0, -total);
            continue;
        }
        Complex acc = 0.0;
        for (int l = lo; l <= hi; ++l) {
            acc += std::conj(y[static_cast<size_t>(l + K)]) * y[static_cast<size_t>(k + l + K)] *
                   std::polar(1.0, -2.0 * k * l * t);
        }
        dy[static_cast<size_t>(k + K)] = Complex(0.0, -1.0) * acc;
    }
}

void rhs_lab_into(double t, const std::vector<Complex>& y, int K,
                  std::vector<Complex>& dy) {
    (void)t;  // the lab form is autonomous
    dy.resize(y.size());
    for (int k = -K; k <= K; ++k) {
        const int lo = std::max(-K, -K - k);
        const int hi = std::min(K, K - k);
        Complex conv = 0.0;
        if (k == 0) {
            double total = 0.0;
            for (int l = lo; l <= hi; ++l) total += std::norm(y[static_cast<size_t>(l + K)]);
            conv = total;  // keeps Re uhat_0 exactly conserved
        } else {
            for (int l = lo; l <= hi; ++l)
                conv += std::conj(y[static_cast<size_t>(l + K)]) * y[static_cast<size_t>(k + l + K)];
        }
        const double k2 = static_cast<double>(k) * k;
        dy[static_cast<size_t>(k + K)] =
            Complex(0.0, -1.0) * (k2 * y[static_cast<size_t>(k + K)] + conv);
    }
}

std::vector<Complex> rhs_rotating(const SpectralState& state) {
    state.check_valid();
    std::vector<Complex> dy;
    rhs_rotating_into(state.t, state.coeffs, state.K, dy);
    return dy;
}

std::vector<Complex> rhs_lab(const std::vector<Complex>& lab_coeffs, double t) {
    const int K = (static_cast<int>(lab_coeffs.size()) - 1) / 2;
    if (2 * K + 1 != static_cast<int>(lab_coeffs.size()) || K < 1)
        throw InvalidState("rhs_lab: coefficient count must be 2K+1 with K >= 1");
    std::vector<Complex> dy;
    rhs_lab_into(t, lab_coeffs, K, dy);
    return dy;
}

}  // namespace tnls
