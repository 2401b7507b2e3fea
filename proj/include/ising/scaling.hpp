#pragma once

namespace ising {

/// Thermodynamic fidelity scaling function A evaluated at c = (g - 1)/|delta|.
struct ScalingPoint {
    double c;
    double a_value;
    double c1; // argument -4|c|/(|c|-1)^2 passed to K (infinite at |c| = 1)
    double c2; // argument (|c|+1)^2/(|c|-1)^2 passed to E (infinite at |c| = 1)
};

/// A(c) from the closed elliptic-integral form:
///   t    = |c| K(c1) / (2 pi) + (|c| - 1) Im E(c2) / (4 pi),
///   A(c) = 1/4 + t          for |c| < 1,
///          |c|/4 - t        for |c| > 1.
/// The two pieces join continuously; within 1e-9 of |c| = 1 the (removable)
/// singularity is bridged by Richardson-extrapolated interpolation, accurate
/// to ~1e-9. A(0) = 1/4, A(c) -> 1/(16|c|) + O(c^-3) far from criticality.
ScalingPoint scaling_A(double c);

/// Large-|c| asymptote 1/(16|c|); rejects |c| < 1 where it is meaningless.
double scaling_A_far(double c);

/// Thermodynamic-limit fidelity decay rate ln F / N = -|delta| A((g-1)/|delta|)
/// for small delta. delta = 0 returns 0.
double ln_fidelity_per_site(double g, double delta);

/// Difference between the finite-N mode sum sum_k ln cos(Dtheta_k / 2) and
/// its thermodynamic-limit integral (N / 2 pi) int_0^pi dk ln cos(Dtheta/2)
/// at (g, delta, N). At g = 1 it tends to ln(2)/2 once N |delta| >> 1: the
/// subleading constant of the critical fidelity.
double sum_minus_integral(double g, double delta, int n);

/// Whether a finite system of n sites at displacement delta responds like the
/// thermodynamic limit: the crossover variable is N |delta|.
struct ThermoOnset {
    double ratio; // N * |delta|
    bool reached; // ratio >= threshold
};

ThermoOnset thermo_onset(int n, double delta, double threshold = 10.0);

} // namespace ising
