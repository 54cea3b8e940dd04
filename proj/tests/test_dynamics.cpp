#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnls/dynamics.hpp"

using namespace tnls;
using std::numbers::pi;

namespace {

std::mt19937_64 rng(77123u);

SpectralState random_regime_state(int K, double amplitude) {
    std::uniform_real_distribution<double> mag(0.0, amplitude);
    std::uniform_real_distribution<double> arg(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> time(0.0, 1.5);
    SpectralState s(time(rng), K);
    for (int k = -K; k <= K; ++k) s.mode(k) = std::polar(mag(rng), arg(rng));
    s.mode(0) = Complex(0.0, mag(rng) + 0.5 * amplitude);
    return s;
}

}  // namespace

TEST_CASE("rotating rhs on constant data") {
    const double mu0 = 0.8;
    SpectralState s = constant_state(3, Complex(0.0, mu0));
    auto dy = rhs_rotating(s);
    // d(mu)/dt = -mu0^2, all other modes at rest
    CHECK(std::abs(dy[3] - Complex(0.0, -mu0 * mu0)) < 1e-16);
    for (int k = -3; k <= 3; ++k)
        if (k != 0) CHECK(std::abs(dy[(size_t)(k + 3)]) == 0.0);

    SpectralState zero(0.0, 2);
    auto dz = rhs_rotating(zero);
    for (auto v : dz) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("rotating rhs equals -i * nonlinearity coefficients") {
    for (int trial = 0; trial < 25; ++trial) {
        SpectralState s = random_regime_state(4, 0.3);
        auto dy = rhs_rotating(s);
        auto n = nonlinearity_modes(s);
        for (size_t i = 0; i < dy.size(); ++i)
            CHECK(std::abs(dy[i] - Complex(0.0, -1.0) * n[i]) < 1e-13);
    }
}

TEST_CASE("rotating rhs regime check") {
    SpectralState s = constant_state(2, Complex(1e-3, 0.5));
    CHECK_THROWS_AS(rhs_rotating(s), RegimeViolation);
    SpectralState ok = constant_state(2, Complex(5e-11, 0.5));
    CHECK_NOTHROW(rhs_rotating(ok));
}

TEST_CASE("lab rhs closed cases") {
    // Constant mode uhat_0 = i c: duhat_0/dt = -i c^2, so Im uhat_0 decays
    // at rate c^2 and Re uhat_0 is conserved.
    const double c = 0.6;
    std::vector<Complex> lab(5, 0.0);
    lab[2] = Complex(0.0, c);
    auto dy = rhs_lab(lab, 0.0);
    CHECK(std::abs(dy[2] - Complex(0.0, -c * c)) < 1e-16);

    // Single wave uhat_1 = 1: linear part -i on mode 1, nonlinear -i on mode 0.
    std::vector<Complex> wave(5, 0.0);
    wave[3] = 1.0;
    auto dw = rhs_lab(wave, 0.0);
    CHECK(std::abs(dw[3] - Complex(0.0, -1.0)) < 1e-16);
    CHECK(std::abs(dw[2] - Complex(0.0, -1.0)) < 1e-16);
}

TEST_CASE("frame equivalence of the two right-hand sides") {
    // With uhat_k = u_k e^{-ik^2 t}:
    //   du_k/dt = e^{ik^2 t} duhat_k/dt + i k^2 u_k.
    for (int trial = 0; trial < 25; ++trial) {
        SpectralState s = random_regime_state(5, 0.4);
        auto rot = rhs_rotating(s);
        auto lab = to_lab_frame(s);
        auto dlab = rhs_lab(lab, s.t);
        for (int k = -5; k <= 5; ++k) {
            const size_t i = (size_t)(k + 5);
            Complex via_lab = dlab[i] * std::polar(1.0, (double)k * k * s.t) +
                              Complex(0.0, (double)k * k) * s.mode(k);
            CHECK(std::abs(rot[i] - via_lab) < 1e-12);
        }
    }
}

TEST_CASE("zero-mode decay is monotone in both frames") {
    for (int trial = 0; trial < 25; ++trial) {
        SpectralState s = random_regime_state(4, 0.5);
        auto rot = rhs_rotating(s);
        CHECK(rot[4].imag() <= 0.0);   // d(mu)/dt = -mu^2 - nu
        CHECK(rot[4].real() == 0.0);   // Re u_0 frozen

        std::uniform_real_distribution<double> mag(-0.5, 0.5);
        std::vector<Complex> lab(9);
        for (auto& v : lab) v = Complex(mag(rng), mag(rng));
        auto dlab = rhs_lab(lab, 0.0);
        CHECK(dlab[4].imag() <= 0.0);  // d(Im uhat_0)/dt = -(mean of |u|^2)
        CHECK(dlab[4].real() == 0.0);
    }
}
