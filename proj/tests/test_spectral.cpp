#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnls/spectral.hpp"

using namespace tnls;
using std::numbers::pi;

namespace {

std::mt19937_64 rng(20260809u);

SpectralState random_state(int K, double amplitude, bool regime = false) {
    std::uniform_real_distribution<double> mag(0.0, amplitude);
    std::uniform_real_distribution<double> arg(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    SpectralState s(time(rng), K);
    for (int k = -K; k <= K; ++k) s.mode(k) = std::polar(mag(rng), arg(rng));
    if (regime) s.mode(0) = Complex(0.0, mag(rng));
    return s;
}

double max_mode_diff(const SpectralState& a, const SpectralState& b) {
    double m = 0.0;
    for (int k = -a.K; k <= a.K; ++k) m = std::max(m, std::abs(a.mode(k) - b.mode(k)));
    return m;
}

// Independent quadrature oracle for the nonlinearity coefficients: sample
// |u|^2 on a fine grid, take discrete Fourier coefficients, undo the frame
// phase e^{-ik^2 t}.
Complex nonlinearity_oracle(const SpectralState& s, int k, int M) {
    PhysicalField f = synthesize(s, M);
    Complex acc = 0.0;
    const double dx = 2.0 * pi / M;
    for (int j = 0; j < M; ++j)
        acc += std::norm(f.samples[(size_t)j]) * std::polar(1.0, -k * dx * j);
    acc /= static_cast<double>(M);
    return acc * std::polar(1.0, (double)k * k * s.t);
}

// l-outer triple loop for the resonant remainder, independent of the
// k-outer implementation order.
double r_K_oracle(const SpectralState& s, int K_partial) {
    const int K = s.K;
    double acc = 0.0;
    for (int l = -K; l <= K; ++l) {
        if (l == 0) continue;
        for (int k = -K_partial; k <= K_partial; ++k) {
            if (k == 0) continue;
            if (k + l < -K || k + l > K) continue;
            Complex term = std::conj(s.mode(k) * s.mode(l)) * s.mode(k + l) *
                           std::polar(1.0, -2.0 * k * l * s.t);
            acc += term.imag();
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("frame conversion phases") {
    SpectralState s(0.0, 3);
    s.mode(1) = Complex(0.3, -0.2);
    s.mode(-2) = Complex(0.1, 0.4);
    auto lab = to_lab_frame(s);
    for (int k = -3; k <= 3; ++k)
        CHECK(std::abs(lab[(size_t)(k + 3)] - s.mode(k)) == doctest::Approx(0.0));  // t = 0

    SpectralState sp(pi, 2);
    sp.mode(1) = 1.0;
    auto labp = to_lab_frame(sp);
    CHECK(std::abs(labp[3] - Complex(-1.0, 0.0)) < 1e-15);  // e^{-i pi} = -1

    for (int trial = 0; trial < 20; ++trial) {
        SpectralState r = random_state(5, 1.0);
        SpectralState back = from_lab_frame(to_lab_frame(r), r.K, r.t);
        CHECK(max_mode_diff(r, back) < 1e-15);
    }
}

TEST_CASE("synthesize basics") {
    SpectralState s = constant_state(2, Complex(0.0, 0.7));
    PhysicalField f = synthesize(s, 8);
    for (auto v : f.samples) CHECK(std::abs(v - Complex(0.0, 0.7)) < 1e-15);

    SpectralState one(0.0, 2);
    one.mode(1) = 1.0;
    PhysicalField g = synthesize(one, 8);
    for (int j = 0; j < 8; ++j) {
        const double x = 2.0 * pi * j / 8.0;
        CHECK(std::abs(g.samples[(size_t)j] - std::polar(1.0, x)) < 1e-14);
    }

    CHECK_THROWS_AS(synthesize(one, 4), GridTooCoarse);
}

TEST_CASE("analyze basics and round trip") {
    PhysicalField constant;
    constant.samples.assign(16, Complex(0.0, 1.0));
    SpectralState s = analyze(constant, 3, 0.0);
    CHECK(std::abs(s.mode(0) - Complex(0.0, 1.0)) < 1e-15);
    for (int k = -3; k <= 3; ++k)
        if (k != 0) CHECK(std::abs(s.mode(k)) < 1e-15);

    PhysicalField wave;
    wave.samples.resize(16);
    for (int j = 0; j < 16; ++j) wave.samples[(size_t)j] = std::polar(1.0, 2.0 * pi * j / 16.0);
    SpectralState w = analyze(wave, 3, 0.0);
    CHECK(std::abs(w.mode(1) - Complex(1.0, 0.0)) < 1e-14);

    PhysicalField tiny;
    tiny.samples.assign(5, Complex(0.0, 0.0));
    CHECK_THROWS_AS(analyze(tiny, 3, 0.0), GridTooCoarse);

    // Discrete orthogonality makes the round trip exact for M >= 2K+1.
    for (int trial = 0; trial < 20; ++trial) {
        SpectralState r = random_state(8, 1.0);
        SpectralState back = analyze(synthesize(r, 32), r.K, r.t);
        CHECK(max_mode_diff(r, back) < 1e-14);
    }
}

TEST_CASE("nonlinearity coefficients, closed cases") {
    SpectralState s = constant_state(3, Complex(0.0, 0.9));
    auto n = nonlinearity_modes(s);
    CHECK(std::abs(n[3] - Complex(0.81, 0.0)) < 1e-15);  // |i c|^2 = c^2
    for (int k = -3; k <= 3; ++k)
        if (k != 0) CHECK(std::abs(n[(size_t)(k + 3)]) < 1e-15);

    SpectralState one(0.4, 3);
    one.mode(1) = Complex(0.5, 0.25);
    auto m = nonlinearity_modes(one);
    CHECK(std::abs(m[3] - Complex(std::norm(Complex(0.5, 0.25)), 0.0)) < 1e-15);
    CHECK(std::abs(m[4]) < 1e-15);
    CHECK(std::abs(m[2]) < 1e-15);
}

TEST_CASE("nonlinearity coefficients vs quadrature oracle") {
    for (int trial = 0; trial < 10; ++trial) {
        SpectralState s = random_state(4, 0.8);
        auto n = nonlinearity_modes(s);
        for (int k = -4; k <= 4; ++k)
            CHECK(std::abs(n[(size_t)(k + 4)] - nonlinearity_oracle(s, k, 64)) < 1e-12);
    }
}

TEST_CASE("nonlinearity conjugate symmetry") {
    // At t = 0 the coefficients of the real field |u|^2 are conjugate-even.
    for (int trial = 0; trial < 50; ++trial) {
        SpectralState s = random_state(6, 1.0);
        s.t = 0.0;
        auto n = nonlinearity_modes(s);
        for (int k = 1; k <= 6; ++k)
            CHECK(std::abs(n[(size_t)(k + 6)] - std::conj(n[(size_t)(-k + 6)])) < 1e-14);
    }
    // At t != 0 the rotating frame twists the symmetry by e^{2ik^2 t}.
    for (int trial = 0; trial < 20; ++trial) {
        SpectralState s = random_state(5, 1.0);
        auto n = nonlinearity_modes(s);
        for (int k = 1; k <= 5; ++k) {
            Complex twisted = std::conj(n[(size_t)(k + 5)]) * std::polar(1.0, 2.0 * k * k * s.t);
            CHECK(std::abs(n[(size_t)(-k + 5)] - twisted) < 1e-13);
        }
    }
}

TEST_CASE("diagnostics closed cases") {
    SpectralState s = constant_state(4, Complex(0.0, 1.0));
    Diagnostics d = diagnostics(s);
    CHECK(d.mu == doctest::Approx(1.0));
    CHECK(d.nu == 0.0);
    CHECK(d.r_K == 0.0);
    CHECK(d.l2_norm == doctest::Approx(1.0));

    SpectralState p = seeded_pair_state(4, 1.0, 1e-2);
    Diagnostics dp = diagnostics(p);
    CHECK(dp.nu == doctest::Approx(2e-4));
    CHECK(dp.nu_K == doctest::Approx(2e-4));
}

TEST_CASE("diagnostics invariants and remainder oracle") {
    for (int trial = 0; trial < 30; ++trial) {
        SpectralState s = random_state(5, 0.7);
        for (int kp = 1; kp <= 5; ++kp) {
            Diagnostics d = diagnostics(s, kp);
            CHECK(d.nu >= 0.0);
            CHECK(d.nu_K >= 0.0);
            CHECK(d.nu_K <= d.nu + 1e-16);
            CHECK(d.l2_norm * d.l2_norm ==
                  doctest::Approx(d.nu + std::norm(s.mode(0))).epsilon(1e-12));
            CHECK(std::abs(d.r_K - r_K_oracle(s, kp)) < 1e-13);
        }
    }
}

TEST_CASE("Parseval against grid quadrature") {
    for (int K : {4, 8, 16}) {
        SpectralState s = random_state(K, 0.5);
        const int M = 4 * K;
        PhysicalField f = synthesize(s, M);
        double mean_sq = 0.0;
        for (auto v : f.samples) mean_sq += std::norm(v);
        mean_sq /= static_cast<double>(M);
        Diagnostics d = diagnostics(s);
        CHECK(std::abs(d.l2_norm * d.l2_norm - mean_sq) < 1e-12);
    }
}

TEST_CASE("state validation") {
    SpectralState s(0.0, 2);
    s.mode(1) = Complex(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_AS(s.check_valid(), InvalidState);
    CHECK_THROWS_AS(SpectralState(0.0, 0), InvalidState);
    CHECK_THROWS_AS(diagnostics(constant_state(2, 1.0), 3), InvalidState);
}
