#include "ising/fidelity.hpp"

#include "ising/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ising {

FidelityResult fidelity(double g, double delta, int n) {
    if (n < 2) throw std::domain_error("fidelity: need n >= 2");
    ParitySector sector_plus = ground_state_parity(g + delta, n);
    ParitySector sector_minus = ground_state_parity(g - delta, n);
    if (sector_plus != sector_minus)
        throw std::domain_error(
            "fidelity: g + delta and g - delta lie in different parity "
            "sectors; the overlap between them vanishes");
    MomentumGrid grid = momentum_grid(n, sector_plus);
    long double log_f = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.unpaired(i)) continue; // occupation fixed, overlap 1
        double k = grid.momentum(i);
        double sk = std::sin(k), ck = std::cos(k);
        double xp = (g + delta) - ck;
        double xm = (g - delta) - ck;
        // Bogoliubov angle mismatch between the two ground states; the
        // atan2 form needs no normalization and is exact for any delta.
        double dtheta = std::atan2(-2.0 * delta * sk, xp * xm + sk * sk);
        // ln cos(x) = log1p(-2 sin^2(x/2)): full relative accuracy both for
        // dtheta ~ 0 (F ~ 1) and for the product underflowing.
        double s = std::sin(0.25 * dtheta);
        log_f += std::log1p(-2.0 * s * s);
    }
    double lf = static_cast<double>(log_f);
    return FidelityResult{g, delta, n, std::exp(lf), lf / n};
}

} // namespace ising
