#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace ising {

/// Linear ramp g(t) = -t / tau_q, integrated from g_start down to g_end.
struct QuenchProtocol {
    double tau_q;
    int n_spins;
    double g_start = 5.0;
    double g_end = 0.0;

    double t_start() const { return -g_start * tau_q; }
    double t_end() const { return -g_end * tau_q; }
    double g_of_t(double t) const { return -t / tau_q; }
};

/// Final state of one momentum mode after the ramp, in the basis
/// {|0>_k |0>_-k, |1>_k |1>_-k} (vacuum / excited pair of the g -> +inf
/// Bogoliubov quasiparticles, i.e. the spin basis of the 2x2 mode problem).
struct ModeState {
    double k;
    std::complex<double> amp_vac;
    std::complex<double> amp_pair;
    long steps_accepted = 0;
    long steps_rejected = 0;
    double norm_drift = 0.0; // | ||psi||^2 - 1 | at the end of the ramp
};

struct TrajectoryPoint {
    double t;
    double g;
    double p_instantaneous; // overlap with the instantaneous ground state
};

struct QuenchResult {
    QuenchProtocol protocol;
    double p_gs_final; // |<GS(g_end)|psi>|^2 = prod_k per-mode overlaps
    std::vector<TrajectoryPoint> trajectory; // empty unless recorded
    double norm_drift;                       // max over modes
    long total_steps;                        // accepted steps, summed
};

/// 2x2 Hamiltonian of mode k at field g in the ModeState basis:
///   [ -2(g - cos k)   2 sin k       ]
///   [  2 sin k        2(g - cos k)  ].
/// Ground state (cos(theta/2), -sin(theta/2)) with energy -2 Lambda.
Eigen::Matrix2d mode_hamiltonian(double g, double k);

/// Integrates i d/dt psi = H_k(g(t)) psi from t_start to t_end with an
/// adaptive Dormand-Prince 5(4) scheme, starting in the ground state at
/// g_start. Throws numerical_error if the step size underflows.
ModeState evolve_mode(double k, const QuenchProtocol& protocol,
                      double tol = 1e-10);

/// Full quench: evolves every positive-sector mode (n_spins must be even and
/// the ramp must stay in g >= 0, where that sector holds the ground state)
/// and multiplies the per-mode ground-state overlaps. With record_trajectory
/// the instantaneous overlap is sampled at n_samples uniformly spaced times
/// via dense output, at no extra integration cost. threads = 0 picks the
/// ISING_THREADS environment value, falling back to the hardware count.
QuenchResult run_quench(const QuenchProtocol& protocol, double tol = 1e-10,
                        bool record_trajectory = false, int n_samples = 200,
                        int threads = 0);

/// Kibble-Zurek crossing scale: ghat = 1/sqrt(tau_q) for z = nu = 1.
double ghat(double tau_q);

/// Adiabatic-impulse prediction p_GS ~= 2 exp(-N * c / sqrt(tau_q)) for the
/// probability of finishing in the ground state, valid for N >> sqrt(tau_q).
/// The constant c is calibrated against simulation. If ngg_ok is non-null it
/// receives whether the validity condition N >= 5 sqrt(tau_q) holds.
double adiabatic_impulse_p_gs(int n, double tau_q, double c = 0.147084,
                              bool* ngg_ok = nullptr);

struct CriticalExponents {
    double z = 1.0;
    double nu = 1.0;
    double d = 1.0;
};

/// General KZ form exp(-N c / tau^(d nu / (1 + z nu))); the Ising exponents
/// z = nu = d = 1 reduce it to the 1/sqrt(tau_q) law above.
double kz_scaling(int n, double tau_q, CriticalExponents exponents = {},
                  double c = 0.147084);

/// Opposite (adiabatic) limit tau_Q >> N^2: p_GS ~= 1 - exp(-2 pi^3 tau_q / N^2).
double adiabatic_finite_size(int n, double tau_q);

/// Ordinary least squares y = intercept + slope * x with standard errors from
/// the residual variance. Requires >= 3 points and non-degenerate x.
struct FitResult {
    double intercept;
    double slope;
    double stderr_intercept;
    double stderr_slope;
    double r_squared;
};

FitResult linear_fit(const std::vector<std::pair<double, double>>& points);

} // namespace ising
