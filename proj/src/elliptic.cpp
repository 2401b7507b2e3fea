#include "ising/elliptic.hpp"

#include "ising/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ising {

namespace {

using cplx = std::complex<double>;

// Convergence threshold for the Carlson duplication loops. The truncation
// error of the fifth-order tail series is O(eps^6), so 1e-4 leaves the
// result at machine precision with a couple of iterations to spare.
constexpr double err_tol = 1e-4;
constexpr int max_iter = 64;

double magnitude(const cplx& z) { return std::abs(z); }

} // namespace

// Carlson R_F by duplication (Carlson 1995; coefficients as in the standard
// fifth-order tail expansion). Principal square roots throughout, which keeps
// the iteration on the right branch for arguments off the negative real axis.
cplx carlson_rf(cplx x, cplx y, cplx z) {
    cplx xt = x, yt = y, zt = z;
    cplx ave;
    cplx delx, dely, delz;
    for (int i = 0;; ++i) {
        if (i >= max_iter)
            throw numerical_error("carlson_rf: duplication did not converge");
        cplx sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        cplx lam = sx * sy + sy * sz + sz * sx;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + zt) / 3.0;
        delx = (ave - xt) / ave;
        dely = (ave - yt) / ave;
        delz = (ave - zt) / ave;
        double eps = std::max({magnitude(delx), magnitude(dely),
                               magnitude(delz)});
        if (eps < err_tol) break;
    }
    cplx e2 = delx * dely - delz * delz;
    cplx e3 = delx * dely * delz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
           std::sqrt(ave);
}

cplx carlson_rd(cplx x, cplx y, cplx z) {
    cplx xt = x, yt = y, zt = z;
    cplx sum = 0.0;
    double fac = 1.0;
    cplx ave;
    cplx delx, dely, delz;
    for (int i = 0;; ++i) {
        if (i >= max_iter)
            throw numerical_error("carlson_rd: duplication did not converge");
        cplx sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        cplx lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + 3.0 * zt) / 5.0;
        delx = (ave - xt) / ave;
        dely = (ave - yt) / ave;
        delz = (ave - zt) / ave;
        double eps = std::max({magnitude(delx), magnitude(dely),
                               magnitude(delz)});
        if (eps < err_tol) break;
    }
    cplx ea = delx * dely;
    cplx eb = delz * delz;
    cplx ec = ea - eb;
    cplx ed = ea - 6.0 * eb;
    cplx ee = ed + ec + ec;
    cplx tail =
        1.0 +
        ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (4.5 / 26.0) * delz * ee) +
        delz * (ee / 6.0 + delz * (-(9.0 / 22.0) * ec + delz * (3.0 / 26.0) * ea));
    return 3.0 * sum + fac * tail / (ave * std::sqrt(ave));
}

EllipticValue elliptic_K(double m) {
    if (m >= 1.0)
        throw std::domain_error(
            "elliptic_K: diverges at m = 1 and is not continued beyond");
    return EllipticValue{m, carlson_rf(0.0, 1.0 - m, 1.0)};
}

EllipticValue elliptic_E(double m) {
    if (m == 1.0) return EllipticValue{m, 1.0};
    // For m > 1 the integrand sqrt(1 - m sin^2 phi) crosses zero inside the
    // range; the principal branch (Im E > 0) is selected by handing Carlson
    // the argument 1 - m with a positive-zero imaginary part.
    cplx y(1.0 - m, 0.0);
    cplx value = carlson_rf(0.0, y, 1.0) -
                 (m / 3.0) * carlson_rd(0.0, y, 1.0);
    if (m < 1.0) value = cplx(value.real(), 0.0); // exactly real by symmetry
    return EllipticValue{m, value};
}

} // namespace ising
