#include "doctest.h"

#include "ising/elliptic.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace ising;

namespace {

// Defining integrals, evaluated independently of the Carlson forms.
double quad_K(double m) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, std::asin(1.0));
}

double quad_E_real(double m) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return std::sqrt(1.0 - m * s * s);
        },
        0.0, std::asin(1.0));
}

// m > 1: the radicand changes sign at phi* = asin(1/sqrt(m)); the principal
// square root turns the outer piece into +i sqrt(m sin^2 - 1).
std::complex<double> quad_E_complex(double m) {
    boost::math::quadrature::tanh_sinh<double> integ;
    double phi_star = std::asin(1.0 / std::sqrt(m));
    double re = integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return std::sqrt(std::max(0.0, 1.0 - m * s * s));
        },
        0.0, phi_star);
    double im = integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return std::sqrt(std::max(0.0, m * s * s - 1.0));
        },
        phi_star, std::asin(1.0));
    return {re, im};
}

} // namespace

TEST_CASE("closed values of K and E") {
    CHECK(elliptic_K(0.0).value.real() ==
          doctest::Approx(std::asin(1.0)).epsilon(1e-15));
    CHECK(elliptic_E(0.0).value.real() ==
          doctest::Approx(std::asin(1.0)).epsilon(1e-15));
    CHECK(elliptic_E(1.0).value.real() == 1.0);
    CHECK(elliptic_E(1.0).value.imag() == 0.0);
    CHECK(elliptic_K(0.5).parameter == 0.5);
}

TEST_CASE("K matches its defining integral on m < 1") {
    for (double m : {-10.0, -3.0, -1.0, -0.2, 0.0, 0.3, 0.7, 0.9, 0.99, 0.999}) {
        double k = elliptic_K(m).value.real();
        CHECK(elliptic_K(m).value.imag() == 0.0);
        CHECK(std::abs(k - quad_K(m)) <= 1e-12 * std::abs(k));
    }
}

TEST_CASE("E matches its defining integral on m <= 1") {
    for (double m : {-10.0, -2.0, 0.25, 0.5, 0.9, 0.999}) {
        double e = elliptic_E(m).value.real();
        CHECK(elliptic_E(m).value.imag() == 0.0);
        CHECK(std::abs(e - quad_E_real(m)) <= 1e-12 * std::abs(e));
    }
}

TEST_CASE("E continues to m > 1 on the principal branch") {
    auto e4 = elliptic_E(4.0).value;
    CHECK(e4.real() == doctest::Approx(0.40629888645996025).epsilon(1e-12));
    CHECK(e4.imag() == doctest::Approx(1.3438542313870974).epsilon(1e-12));

    for (double m : {1.5, 2.0, 4.0, 10.0, 25.0, 50.0}) {
        auto e = elliptic_E(m).value;
        CHECK(e.imag() > 0.0);
        auto q = quad_E_complex(m);
        CHECK(std::abs(e - q) <= 1e-10 * std::abs(e));
    }
}

TEST_CASE("K rejects the divergent and continued region") {
    CHECK_THROWS_AS(elliptic_K(1.0), std::domain_error);
    CHECK_THROWS_AS(elliptic_K(2.0), std::domain_error);
}

TEST_CASE("Carlson forms satisfy their normalization identities") {
    using cplx = std::complex<double>;
    // R_F(x,x,x) = x^(-1/2), R_D(x,x,x) = x^(-3/2).
    CHECK(std::abs(carlson_rf(cplx(2), cplx(2), cplx(2)) -
                   cplx(1.0 / std::sqrt(2.0))) <= 1e-12);
    CHECK(std::abs(carlson_rd(cplx(4), cplx(4), cplx(4)) - cplx(0.125)) <=
          1e-12);
    // R_F(0, y, y) = pi / (2 sqrt(y)).
    CHECK(std::abs(carlson_rf(cplx(0), cplx(1), cplx(1)) -
                   cplx(std::asin(1.0))) <= 1e-12);
    // Complex arguments off the negative real axis.
    cplx y(1.0, 2.0);
    CHECK(std::abs(carlson_rf(y, y, y) - 1.0 / std::sqrt(y)) <= 1e-10);
}
