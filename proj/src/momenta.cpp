#include "ising/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ising {

std::vector<double> MomentumGrid::momenta() const {
    std::vector<double> out;
    out.reserve(multiples.size());
    for (std::size_t i = 0; i < multiples.size(); ++i)
        out.push_back(momentum(i));
    return out;
}

MomentumGrid momentum_grid(int n, ParitySector sector) {
    if (n < 2) throw std::domain_error("momentum_grid: need n >= 2");
    MomentumGrid grid{n, sector, {}};
    if (sector == ParitySector::Positive) {
        // odd multiples 1, 3, ..., capped at n (k = pi appears for odd n)
        for (int m = 1; m <= n; m += 2) grid.multiples.push_back(m);
    } else {
        // even multiples 0, 2, ..., capped at n (k = pi appears for even n)
        for (int m = 0; m <= n; m += 2) grid.multiples.push_back(m);
    }
    return grid;
}

ModeAngle bogoliubov_angle(double g, double k) {
    double sin_k = std::sin(k);
    double x = g - std::cos(k);
    double lambda = std::hypot(x, sin_k);
    // Exactly zero at (1, 0); at (-1, pi) the rounding of pi leaves a stray
    // ~1e-16, so treat anything below the noise floor as the degeneracy.
    if (lambda < 1e-12 * (1.0 + std::fabs(g)))
        throw std::domain_error(
            "bogoliubov_angle: degenerate mode (g = " + std::to_string(g) +
            ", k = " + std::to_string(k) + ")");
    return ModeAngle{g, k, sin_k / lambda, x / lambda, 2.0 * lambda};
}

double correlation_length(double g) {
    if (g == 0.0)
        throw std::domain_error("correlation_length: g = 0 has zero length");
    double log_abs = std::log(std::fabs(g));
    if (log_abs == 0.0)
        throw std::domain_error("correlation_length: divergent at |g| = 1");
    return 1.0 / std::fabs(log_abs);
}

ParitySector ground_state_parity(double g, int n) {
    if (n < 2) throw std::domain_error("ground_state_parity: need n >= 2");
    if (n % 2 == 0) return ParitySector::Positive;
    if (g > 0.0) return ParitySector::Positive;
    if (g < 0.0) return ParitySector::Negative;
    throw std::domain_error(
        "ground_state_parity: ambiguous for odd n at g = 0");
}

double sector_ground_energy(double g, int n, ParitySector sector) {
    MomentumGrid grid = momentum_grid(n, sector);
    long double paired = 0.0L;
    // Unpaired k = 0, pi modes enter as e_u (n_u - 1/2) with e_u = 2(g - cos u)
    // and occupations n_u in {0,1}; the total fermion number must be even in
    // the Positive sector, odd in the Negative one, so with one unpaired mode
    // its occupation is forced and with two (negative sector, even n) the
    // cheaper odd-total assignment wins.
    std::vector<double> unpaired_e;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double k = grid.momentum(i);
        if (grid.unpaired(i)) {
            unpaired_e.push_back(2.0 * (g - std::cos(k)));
        } else {
            paired -= static_cast<long double>(bogoliubov_angle(g, k).energy);
        }
    }
    bool need_odd_total = (sector == ParitySector::Negative);
    long double zero_point = 0.0L;
    for (double e : unpaired_e) zero_point -= 0.5L * static_cast<long double>(e);
    long double occupation = 0.0L;
    if (unpaired_e.size() == 1) {
        // paired modes contribute even fermion number; one unpaired mode must
        // supply the sector parity on its own
        if (need_odd_total) occupation = unpaired_e[0];
    } else if (unpaired_e.size() == 2) {
        double e0 = unpaired_e[0], e1 = unpaired_e[1];
        if (need_odd_total) {
            occupation = std::min(e0, e1); // occupy exactly one
        } else {
            occupation = std::min(0.0, e0 + e1); // none or both
        }
    }
    return static_cast<double>(paired + zero_point + occupation);
}

} // namespace ising
