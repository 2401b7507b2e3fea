#pragma once

#include "ising/model.hpp"
#include "ising/quench.hpp"

#include <Eigen/Dense>
#include <optional>

namespace ising {

/// Ground state from exact diagonalization of the full 2^N-dimensional spin
/// Hamiltonian H = -sum sigma^x_i sigma^x_{i+1} - g sum sigma^z_i (periodic),
/// block-diagonalized by parity. Spins are bits (0 = up, 1 = down), so basis
/// state s has parity (-1)^popcount(s). The amplitude vector spans the whole
/// 2^N space (zero outside the state's parity block).
struct DenseState {
    int n_spins;
    ParitySector parity;
    Eigen::VectorXcd amplitudes; // length 2^n, indexed by bit pattern
    double energy;
};

/// Lowest state of the requested sector, or of whichever sector is lower when
/// none is given (exponential ferromagnetic near-degeneracies are resolved by
/// the sector split). Feasible up to n = 12.
DenseState dense_ground_state(double g, int n,
                              std::optional<ParitySector> sector = {});

/// |<GS(g - delta)|GS(g + delta)>| by direct inner product of dense ground
/// states, both taken in the sector singled out by ground_state_parity.
double oracle_fidelity(double g, double delta, int n);

/// eps^- - eps^+ from two sector-resolved diagonalizations.
double oracle_parity_gap(double g, int n);

/// Integrates the full-state Schroedinger equation through the ramp (inside
/// the positive-parity block, which the dynamics never leaves) and projects
/// onto the dense ground state at g_end. Capped at n = 10; validates the
/// mode-product quench.
double oracle_quench(const QuenchProtocol& protocol, double tol = 1e-10);

} // namespace ising
