#pragma once

#include "ising/model.hpp"

namespace ising {

enum class ChiVariant {
    Exact,          // chi of the true ground state (positive sector, |g|)
    PositiveSector, // closed form, positive-parity grid
    NegativeSector, // closed form, negative-parity grid
    ModeSum,        // direct sum (1/4) sum_k sin^2 k / Lambda^4
    ParaAsymptote,  // N / (16 g^2 (g^2 - 1)),   |g| > 1
    FerroAsymptote, // N / (16 (1 - g^2)),       |g| < 1
    FiniteDifference
};

struct ChiResult {
    double g;
    int n;
    double chi;
    ChiVariant variant;
};

/// Fidelity susceptibility of the positive-sector ground state, exact closed
/// form. Valid for g != 0 (duality-symmetric: chi(g) = chi(1/g)/g^2 holds by
/// construction). g = 1 is regular: chi = N(N-1)/32.
ChiResult chi_plus(double g, int n);

/// Same for the negative-sector ground state; chi = (N-1)(N-2)/96 at g = 1.
ChiResult chi_minus(double g, int n);

/// Susceptibility of the true ground state: chi_plus(|g|, n) for all g != 0.
ChiResult chi_exact(double g, int n);

/// Direct evaluation of chi = (1/4) sum_k sin^2 k / Lambda_k^4 over the
/// paired momenta of the given sector (unpaired k = 0, pi modes carry no
/// weight). Accumulated in long double; agrees with the closed forms to
/// near machine precision, but costs O(N).
ChiResult chi_mode_sum(double g, int n, ParitySector sector);

enum class Phase { Ferro, Para };

/// Large-N asymptote away from criticality: N/(16 g^2 (g^2-1)) in the
/// paramagnetic phase (|g| > 1), N/(16 (1 - g^2)) in the ferromagnetic one
/// (|g| < 1). Throws std::domain_error when g is on the wrong side.
ChiResult chi_asymptote(double g, int n, Phase phase);

/// chi from the fidelity overlap: (1 - F(g, h, N)) / (2 h^2), with an
/// optional Richardson step (4 chi(h/2) - chi(h)) / 3 removing the O(h^2)
/// error term. Default h balances truncation against cancellation.
ChiResult chi_finite_difference(double g, int n, double h = 1e-5,
                                bool richardson = false);

/// Distance 1 - g_max between the critical point and the maximum of
/// chi_plus on (0, 1), located by root-finding d(ln chi)/dg = 0.
/// Asymptotically 1 - g_max = 6/N^2 - 6/N^3 + O(N^-4).
double chi_max_location(int n);

} // namespace ising
