#pragma once

namespace ising {

struct FidelityResult {
    double g;
    double delta;
    int n;
    double value;        // F(g, delta, N) in [0, 1]
    double log_per_site; // ln(F) / N, safe against underflow of F itself
};

/// Ground-state overlap F = <g - delta | g + delta> = prod_k cos(Dtheta_k/2)
/// over the paired momenta of the shared parity sector. The product is
/// accumulated as sum of log1p(-2 sin^2(Dtheta_k/4)) so that F close to 1
/// and F underflowing to 0 are both handled at full relative precision.
/// Throws std::domain_error if g - delta and g + delta live in different
/// parity sectors (odd N straddling g = 0) or if either endpoint is at a
/// degenerate point.
FidelityResult fidelity(double g, double delta, int n);

} // namespace ising
