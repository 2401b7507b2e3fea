#pragma once

#include <complex>

namespace ising {

/// Complete elliptic integral value together with the parameter it was
/// evaluated at. K and E follow the parameter convention
///   K(m) = int_0^{pi/2} dphi / sqrt(1 - m sin^2 phi),
///   E(m) = int_0^{pi/2} dphi sqrt(1 - m sin^2 phi)
/// (the argument is m = k^2, not the modulus k).
struct EllipticValue {
    double parameter;
    std::complex<double> value;
};

/// K(m) for m < 1 (real result). m >= 1 throws std::domain_error: the
/// integral diverges at m = 1 and the analytic continuation beyond is not
/// needed here.
EllipticValue elliptic_K(double m);

/// E(m) for any real m. Real for m <= 1; for m > 1 the principal branch is
/// returned, with Im E(m) > 0.
EllipticValue elliptic_E(double m);

/// Carlson symmetric forms used to build K and E, exposed for testing.
/// R_F(x,y,z) and R_D(x,y,z) by the duplication algorithm; arguments may be
/// complex with the principal square root taken throughout.
std::complex<double> carlson_rf(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z);
std::complex<double> carlson_rd(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z);

} // namespace ising
