#pragma once

#include <vector>

namespace ising {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Parity of the fermion number (eigenvalue of P = prod_i sigma^z_i).
enum class ParitySector { Positive, Negative };

/// Allowed momenta of one parity sector of the N-site periodic chain.
/// Momenta are stored as integer multiples of pi/N so that large grids carry
/// no accumulated rounding; call momentum()/momenta() for radians.
struct MomentumGrid {
    int n_spins;
    ParitySector sector;
    std::vector<int> multiples; // k_i = multiples[i] * pi / n_spins, increasing

    std::size_t size() const { return multiples.size(); }
    double momentum(std::size_t i) const {
        return pi * static_cast<double>(multiples[i]) / n_spins;
    }
    std::vector<double> momenta() const;
    /// True if the i-th momentum is one of the unpaired k = 0, pi modes.
    bool unpaired(std::size_t i) const {
        return multiples[i] == 0 || multiples[i] == n_spins;
    }
};

/// Positive sector: odd multiples of pi/N in (0, pi]; Negative sector: even
/// multiples in [0, pi). Both lists have ceil(N/2) entries for odd N; for
/// even N the positive list has N/2 entries and the negative one N/2 + 1
/// (it contains both k = 0 and k = pi).
MomentumGrid momentum_grid(int n, ParitySector sector);

/// Bogoliubov angle and quasiparticle energy of mode k at field g.
struct ModeAngle {
    double g;
    double k;
    double sin_theta; // sin k / Lambda
    double cos_theta; // (g - cos k) / Lambda
    double energy;    // 2 * Lambda, Lambda = sqrt(g^2 - 2 g cos k + 1)
};

/// Throws std::domain_error at the degenerate points (g,k) = (1,0), (-1,pi).
ModeAngle bogoliubov_angle(double g, double k);

/// Correlation length xi = 1 / |ln|g|| of the infinite chain.
/// Throws std::domain_error for |g| = 1 (divergent) and rejects g = 0.
double correlation_length(double g);

/// Parity sector hosting the ground state: Positive for even N and for odd N
/// with g > 0; Negative for odd N with g < 0. Odd N with g = 0 is ambiguous
/// and throws std::domain_error.
ParitySector ground_state_parity(double g, int n);

enum class GapRegime { Ferro, Para, Critical };

/// Energy splitting eps^- - eps^+ between the two parity-sector ground states.
struct GapResult {
    double value;
    GapRegime regime;
    double quadrature_error; // estimated absolute error of the integral term
};

/// Evaluates the closed-form gap integrals: the ferromagnetic integral for
/// |g| < 1, the boundary term plus integral for |g| > 1, and
/// 2 tan(pi/4N) sign(g^N) exactly at |g| = 1. sign(value) = sign(g^N).
GapResult parity_gap(double g, int n, double tol = 1e-10);

/// Ground-state energy of one parity sector from the free-fermion solution:
/// paired momenta contribute -2 Lambda_k; the unpaired k = 0, pi modes carry
/// e_u (n_u - 1/2) with e_u = 2(g - cos u) and occupations n_u constrained to
/// even total fermion parity in the Positive sector, odd in the Negative one.
double sector_ground_energy(double g, int n, ParitySector sector);

} // namespace ising
