// Acceptance gate: numbered end-to-end checks with pinned tolerances, one
// PASS/FAIL line each. Run all, or a single one with --criterion <k>.

#include "ising/chi.hpp"
#include "ising/elliptic.hpp"
#include "ising/fidelity.hpp"
#include "ising/model.hpp"
#include "ising/oracle.hpp"
#include "ising/quench.hpp"
#include "ising/scaling.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using namespace ising;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- 1: critical closed form ------------------------------------------

Outcome criterion_1() {
    double worst = 0.0;
    for (int n = 2; n <= 1000; ++n) {
        double expect = static_cast<double>(n) * (n - 1) / 32.0;
        for (double g : {1.0, -1.0}) {
            double rel = std::abs(chi_exact(g, n).chi - expect) / expect;
            worst = std::max(worst, rel);
        }
    }
    return {worst <= 1e-12, fmt("max rel err %.2e, tol 1e-12", worst)};
}

// ---- 2: mode sum vs closed forms ---------------------------------------

Outcome criterion_2() {
    std::vector<double> gs;
    for (int i = 0; i < 45; ++i)
        gs.push_back(0.05 * std::pow(20.0 / 0.05, i / 44.0));
    for (double s : {0.999, 0.999999, 1.0, 1.000001, 1.001}) gs.push_back(s);
    const std::size_t half = gs.size(); // 50 positive values
    for (std::size_t i = 0; i < half; ++i) gs.push_back(-gs[i]);

    const int ns[] = {2,  3,  4,   5,   6,   7,   8,    9,    10, 12,
                      16, 25, 40,  64,  100, 160, 250,  400,  1000, 2000};
    double worst = 0.0;
    for (double g : gs)
        for (int n : ns) {
            double plus = chi_plus(g, n).chi;
            double sum_p = chi_mode_sum(g, n, ParitySector::Positive).chi;
            worst = std::max(worst, std::abs(sum_p - plus) / plus);
            double minus = chi_minus(g, n).chi;
            double sum_m = chi_mode_sum(g, n, ParitySector::Negative).chi;
            if (minus != 0.0)
                worst = std::max(worst, std::abs(sum_m - minus) / minus);
            else if (std::abs(sum_m) > 1e-18)
                worst = std::max(worst, 1.0);
        }
    return {worst <= 1e-12,
            fmt("%zu fields x 20 sizes, both sectors; max rel err %.2e, tol "
                "1e-12",
                gs.size(), worst)};
}

// ---- 3: duality ---------------------------------------------------------

Outcome criterion_3() {
    std::mt19937 rng(20260819);
    std::uniform_real_distribution<double> gdist(0.1, 10.0);
    std::uniform_int_distribution<int> ndist(2, 300);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double g = gdist(rng);
        int n = ndist(rng);
        double lhs = g * g * chi_exact(g, n).chi;
        double rhs = chi_exact(1.0 / g, n).chi / (g * g);
        worst = std::max(worst, std::abs(lhs - rhs) / lhs);
    }
    return {worst <= 1e-10,
            fmt("1000 random fields in (0.1, 10); max rel err %.2e, tol 1e-10",
                worst)};
}

// ---- 4: critical sector ratio ------------------------------------------

Outcome criterion_4() {
    double worst = 0.0;
    for (int n = 4; n <= 400; ++n) {
        double ratio = chi_plus(1.0, n).chi / chi_minus(1.0, n).chi;
        double expect = 3.0 * n / (n - 2);
        worst = std::max(worst, std::abs(ratio - expect) / expect);
    }
    return {worst <= 1e-10, fmt("max rel err %.2e, tol 1e-10", worst)};
}

// ---- 5: overlap vs dense diagonalization --------------------------------

Outcome criterion_5() {
    double worst = 0.0;
    for (int n : {2, 4, 6, 8, 10})
        for (double g : {0.5, 1.0, 1.5})
            for (double delta : {0.01, 0.1}) {
                double diff = std::abs(fidelity(g, delta, n).value -
                                       oracle_fidelity(g, delta, n));
                worst = std::max(worst, diff);
            }
    return {worst <= 1e-8, fmt("max abs diff %.2e, tol 1e-8", worst)};
}

// ---- 6: parity gap vs dense diagonalization -----------------------------

Outcome criterion_6() {
    double worst = 0.0;
    bool signs_ok = true;
    for (int n = 2; n <= 10; ++n)
        for (double g : {-1.5, -1.0, -0.5, 0.5, 1.0, 1.5}) {
            double closed = parity_gap(g, n).value;
            double dense = oracle_parity_gap(g, n);
            worst = std::max(worst, std::abs(closed - dense));
            bool negative_expected = (g < 0.0) && (n % 2 == 1);
            if (negative_expected != (closed < 0.0)) signs_ok = false;
        }
    return {worst <= 1e-6 && signs_ok,
            fmt("max abs diff %.2e, tol 1e-6; sign(g^N) rule %s", worst,
                signs_ok ? "holds" : "violated")};
}

// ---- 7: scaling function ------------------------------------------------

Outcome criterion_7() {
    const int n = 100000;
    const double delta = pi / 1000;
    double worst_rel = 0.0, worst_abs = 0.0;
    for (int i = 0; i <= 16; ++i) {
        double c = -4.0 + 0.5 * i;
        double measured = fidelity(1.0 + c * delta, delta, n).log_per_site /
                          delta;
        double a = scaling_A(c).a_value;
        worst_rel = std::max(worst_rel, std::abs(measured + a) / a);
        worst_abs = std::max(worst_abs, std::abs(measured + a));
    }
    return {worst_rel <= 0.04 && worst_abs <= 2e-3,
            fmt("17 points, c in [-4, 4]; max rel dev %.2e (tol 4e-2), max "
                "abs dev %.2e (tol 2e-3)",
                worst_rel, worst_abs)};
}

// ---- 8: critical finite-size constant ln(2)/2 ---------------------------

Outcome criterion_8() {
    const double target = 0.5 * std::log(2.0);
    const std::pair<int, double> grid[] = {
        {10000, 0.01}, {100000, pi / 1000}, {200000, 5e-4}, {50000, 0.004}};
    double worst = 0.0;
    for (auto [n, delta] : grid)
        worst = std::max(worst,
                         std::abs(sum_minus_integral(1.0, delta, n) - target));
    return {worst <= 1e-3, fmt("max abs dev %.2e, tol 1e-3", worst)};
}

// ---- 9 and 10: quench scaling fits --------------------------------------

Outcome criterion_9() {
    std::vector<std::pair<double, double>> pts;
    for (int n = 100; n <= 1000; n += 100)
        pts.emplace_back(n, std::log(run_quench({50.0, n}).p_gs_final));
    auto fit = linear_fit(pts);
    bool ok = std::abs(fit.intercept - 0.693) <= 0.01 &&
              std::abs(fit.slope + 0.0208) <= 3e-4;
    return {ok, fmt("intercept %.6f (0.693 +- 0.01), slope %.7f (-0.0208 +- "
                    "3e-4)",
                    fit.intercept, fit.slope)};
}

Outcome criterion_10() {
    std::vector<std::pair<double, double>> pts;
    for (int tau = 50; tau <= 150; tau += 10)
        pts.emplace_back(1.0 / std::sqrt(static_cast<double>(tau)),
                         std::log(run_quench({static_cast<double>(tau), 150})
                                      .p_gs_final));
    auto fit = linear_fit(pts);
    bool ok = std::abs(fit.intercept - 0.694) <= 0.005 &&
              std::abs(fit.slope + 22.07) <= 0.15;
    return {ok, fmt("intercept %.6f (0.694 +- 0.005), slope %.4f (-22.07 +- "
                    "0.15), x = 1/sqrt(tau)",
                    fit.intercept, fit.slope)};
}

// ---- 11: mode factorization vs full-state evolution ----------------------

Outcome criterion_11() {
    double worst = 0.0;
    for (double tau : {1.0, 5.0, 20.0}) {
        double modes = run_quench({tau, 8}).p_gs_final;
        double dense = oracle_quench({tau, 8});
        worst = std::max(worst, std::abs(modes - dense));
    }
    return {worst <= 1e-6,
            fmt("N = 8, tau in {1, 5, 20}; max abs diff %.2e, tol 1e-6",
                worst)};
}

// ---- 12: susceptibility maximum location --------------------------------

Outcome criterion_12() {
    double worst_scaled = 0.0;
    for (int n : {50, 100, 200, 500}) {
        double nn = n;
        double asym = 6.0 / (nn * nn) - 6.0 / (nn * nn * nn);
        double diff = std::abs(chi_max_location(n) - asym);
        worst_scaled = std::max(worst_scaled, diff * nn * nn * nn * nn);
    }
    return {worst_scaled <= 20.0,
            fmt("max |residual| * N^4 = %.2f, tol 20", worst_scaled)};
}

// ---- 13: elliptic integrals vs quadrature --------------------------------

double quad_K(double m) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, pi / 2);
}

double quad_E_real(double m) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(
        [m](double phi) {
            double s = std::sin(phi);
            return std::sqrt(1.0 - m * s * s);
        },
        0.0, pi / 2);
}

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
        phi_star, pi / 2);
    return {re, im};
}

Outcome criterion_13() {
    double worst_real = 0.0;
    for (int i = 0; i <= 55; ++i) {
        double m = -10.0 + (0.999 + 10.0) * i / 55.0;
        double k = elliptic_K(m).value.real();
        worst_real = std::max(worst_real, std::abs(k - quad_K(m)) / std::abs(k));
        double e = elliptic_E(m).value.real();
        worst_real =
            std::max(worst_real, std::abs(e - quad_E_real(m)) / std::abs(e));
    }
    for (double m : {0.9, 0.99, 0.999}) {
        double k = elliptic_K(m).value.real();
        worst_real = std::max(worst_real, std::abs(k - quad_K(m)) / std::abs(k));
    }

    double worst_cplx = 0.0;
    std::vector<double> ms;
    for (int i = 0; i < 22; ++i)
        ms.push_back(1.02 * std::pow(50.0 / 1.02, i / 21.0));
    for (double s : {1.5, 2.0, 4.0}) ms.push_back(s);
    for (double m : ms) {
        auto e = elliptic_E(m).value;
        worst_cplx =
            std::max(worst_cplx, std::abs(e - quad_E_complex(m)) / std::abs(e));
    }
    bool ok = worst_real <= 1e-12 && worst_cplx <= 1e-10;
    return {ok, fmt("max rel err %.2e on m <= 0.999 (tol 1e-12), %.2e on m in "
                    "(1, 50] (tol 1e-10)",
                    worst_real, worst_cplx)};
}

// --------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* what;
    Outcome (*run)();
};

const Criterion criteria[] = {
    {1, "critical susceptibility equals N(N-1)/32 for N = 2..1000", criterion_1},
    {2, "mode-sum susceptibility matches the closed forms", criterion_2},
    {3, "duality g^2 chi(g) = g^-2 chi(1/g)", criterion_3},
    {4, "critical sector ratio chi+/chi- equals 3N/(N-2) for N = 4..400",
     criterion_4},
    {5, "overlap product matches dense diagonalization", criterion_5},
    {6, "parity gap matches dense sector diagonalization", criterion_6},
    {7, "critical fidelity decay follows the scaling function A(c)",
     criterion_7},
    {8, "critical mode sum minus integral tends to ln(2)/2", criterion_8},
    {9, "quench: ln p_GS falls linearly in N at fixed tau = 50", criterion_9},
    {10, "quench: ln p_GS follows the 1/sqrt(tau) freeze-out law at N = 150",
     criterion_10},
    {11, "mode-factorized quench equals full-state integration", criterion_11},
    {12, "susceptibility maximum sits 6/N^2 - 6/N^3 below criticality",
     criterion_12},
    {13, "complete elliptic integrals match their defining integrals",
     criterion_13},
};

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion <1..13>]\n", argv[0]);
            return 2;
        }
    }
    if (selected < 0 || selected > 13) {
        std::fprintf(stderr, "criterion out of range: %d\n", selected);
        return 2;
    }

    bool all_pass = true;
    for (const auto& c : criteria) {
        if (selected != 0 && c.id != selected) continue;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %2d: %s (%s)\n", out.pass ? "PASS" : "FAIL",
                    c.id, c.what, out.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
