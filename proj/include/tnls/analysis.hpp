#pragma once

// Theorem-level machinery: the initial-data classifier (global existence holds
// exactly for constant data i*mu0, mu0 >= 0), the explicit constant solutions,
// the Riccati divergence-time bound, the integration-by-parts decomposition of
// the resonant remainder, the summation-constant inequalities behind it, and
// the small-data a priori bounds they imply.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tnls/integrate.hpp"
#include "tnls/spectral.hpp"

namespace tnls {

enum class Regime {
    GlobalConstant,     // i*mu0 with mu0 >= 0: global, stays constant in x
    BlowupNegativeIm,   // Im mean < 0
    BlowupNonzeroRe,    // Re mean != 0
    BlowupZeroMean,     // zero mean, nonzero data
    BlowupOscillatory,  // Im mean > 0, Re mean = 0, oscillation present
};

const char* to_string(Regime regime);

struct ClassifierVerdict {
    Regime regime;
    // Unit multiplier with Re(alpha) > 0 and Im(alpha * mean) < 0; present for
    // the two regimes whose divergence proof runs through it.
    std::optional<Complex> alpha;
    std::optional<double> predicted_blowup_upper;
    std::string notes;
};

ClassifierVerdict classify(const SpectralState& initial);

// Deterministic multiplier choice used by classify; exposed for testing.
// Requires phi0 != 0 and not positive-imaginary-axis when Re phi0 = 0.
Complex blowup_multiplier(Complex phi0);

// Spatially constant solution of i u_t = |u|^p with u(0) = i mu0:
//   mu0 > 0: i (mu0^{1-p} + (p-1) t)^{-1/(p-1)}      (global decay)
//   mu0 = 0: 0
//   mu0 < 0: -i (|mu0|^{1-p} - (p-1) t)^{-1/(p-1)},  t < blowup time
// Throws PastBlowup at or beyond |mu0|^{1-p}/(p-1) when mu0 < 0.
Complex explicit_solution(double p, double mu0, double t);

// |mu0|^{1-p} / (p-1) for mu0 < 0: the lifespan of the negative branch.
double explicit_blowup_time(double p, double mu0);

// Divergence-time upper bound from dM/dt >= C M^p, M(0) = M0 > 0:
// the comparison solution reaches infinity at M0^{1-p} / ((p-1) C).
double riccati_bound(double M0, double C, double p);

// Constants of the remainder estimate
//   |int_0^t R_K| <= A (mu nu + nu^{3/2} + mu0 nu0 + nu0^{3/2})
//                  + B int_0^t (mu nu^{3/2} + nu^2),
// assembled from the summation estimates and stress-tested empirically.
struct LemmaConstants {
    double A = 0.0;
    double B = 0.0;
    std::string provenance;
};

LemmaConstants derive_constants(int K_probe, int trials, unsigned seed = 0);

struct SumConstantsReport {
    int k_max = 0;
    double partial_sum = 0.0;      // sum_{k=1}^{k_max} k^{-2}
    double tail_bound = 0.0;       // 1/k_max
    bool partial_sum_ok = false;   // |partial - pi^2/6| <= tail bound
    int trials = 0;
    double min_margin_trilinear = 0.0;     // rhs - lhs, constant pi/sqrt(3)
    double min_margin_quad_paired = 0.0;   // rhs - lhs, constant pi^2/3
    double min_margin_quad_chain = 0.0;    // rhs - lhs, constant pi^2/3
    bool all_hold = false;
};

// (a) partial sums of sum k^{-2} against pi^2/6; (b) the three weighted
// convolution estimates on random nonnegative sequences supported on
// [-k_max, k_max], checked as inequalities.
SumConstantsReport sum_constants_check(int k_max, int trials = 100, unsigned seed = 0);

// Which factor multiplies conj(u_k u_{-k}) e^{2ik^2 t} in the l = -k branch
// of the decomposition: mu^2 + nu closes the identity (it is -d(mu)/dt);
// mu^2 + nu^2 is kept as an alternative reading and reported side by side.
enum class FactorReading { MuSqPlusNu, MuSqPlusNuSq };

const char* to_string(FactorReading reading);

struct DecompositionReport {
    int K = 0;
    double lhs = 0.0;       // quadrature of R_K over [0, t_end]
    double rhs = 0.0;       // boundary terms plus integral terms I, J
    double residual = 0.0;  // |lhs - rhs|
    FactorReading variant;
};

// Evaluates both sides of the integration-by-parts identity for
// int_0^T R_K dt on a uniformly sampled trajectory, for both factor readings.
// Throws QuadratureTooCoarse if the Richardson estimate of the quadrature
// error exceeds residual_target.
std::vector<DecompositionReport> verify_decomposition(const TrajectoryRecord& traj,
                                                      int K_partial,
                                                      double residual_target = 1e-6);

struct SmallnessReport {
    double mu0 = 0.0;
    double nu0 = 0.0;
    double smallness_lhs = 0.0;        // 4 A mu0 + 4 A (2 nu0)^{1/2} + 3 B mu0
    bool satisfied = false;            // smallness_lhs < 1/2
    std::optional<double> delta;       // inf_t [nu0 - 2A(mu nu + nu^{3/2} + mu0 nu0 + nu0^{3/2})]
    double running_sup_nu = 0.0;       // sup of nu while mu >= 0
};

// Evaluates the small-data bound along a regime trajectory: when the
// smallness inequality holds, sup nu <= 2 nu0 is the a priori control.
SmallnessReport monitor_smallness(const TrajectoryRecord& traj,
                                  const LemmaConstants& consts);

}  // namespace tnls
