#include "ising/quench.hpp"

#include "ising/detail/dopri5.hpp"
#include "ising/errors.hpp"
#include "ising/model.hpp"
#include "ising/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ising {

namespace {

using Vec2 = Eigen::Vector2cd;

// Ground state of mode_hamiltonian(g, k): (cos(theta/2), -sin(theta/2)) with
// energy -2 Lambda. Half angles from the full angle via stable identities;
// for k in (0, pi) we have sin(theta) > 0, so both halves are nonnegative.
Vec2 mode_ground_state(double g, double k) {
    ModeAngle a = bogoliubov_angle(g, k);
    double c = std::sqrt(0.5 * (1.0 + a.cos_theta));
    double s = std::sqrt(0.5 * (1.0 - a.cos_theta));
    if (a.sin_theta < 0.0) s = -s;
    return Vec2(std::complex<double>(c, 0.0), std::complex<double>(-s, 0.0));
}

double overlap_probability(const Vec2& gs, const Vec2& psi) {
    std::complex<double> amp = gs.dot(psi); // conjugates the first factor
    return std::norm(amp);
}

void validate_protocol(const QuenchProtocol& p) {
    if (p.n_spins < 2 || p.n_spins % 2 != 0)
        throw std::domain_error(
            "quench: n_spins must be even and >= 2 (the positive parity "
            "sector only holds the ground state on the whole ramp then)");
    if (!(p.tau_q > 0.0)) throw std::domain_error("quench: need tau_q > 0");
    if (!(p.g_start > p.g_end))
        throw std::domain_error("quench: need g_start > g_end");
    if (p.g_end < 0.0)
        throw std::domain_error(
            "quench: the ramp must stay in g >= 0 where the positive sector "
            "is the ground-state sector");
}

} // namespace

Eigen::Matrix2d mode_hamiltonian(double g, double k) {
    double d = 2.0 * (g - std::cos(k));
    double s = 2.0 * std::sin(k);
    Eigen::Matrix2d h;
    h << -d, s, s, d;
    return h;
}

ModeState evolve_mode(double k, const QuenchProtocol& protocol, double tol) {
    validate_protocol(protocol);
    if (!(tol > 0.0)) throw std::domain_error("evolve_mode: need tol > 0");
    double s = 2.0 * std::sin(k);
    double tau = protocol.tau_q;
    auto rhs = [s, k, tau](double t, const Vec2& y, Vec2& dydt) {
        double g = -t / tau;
        double d = 2.0 * (g - std::cos(k));
        // i dpsi/dt = H psi with H = [[-d, s], [s, d]]
        std::complex<double> mi(0.0, -1.0);
        dydt(0) = mi * (-d * y(0) + s * y(1));
        dydt(1) = mi * (s * y(0) + d * y(1));
    };
    Vec2 y = mode_ground_state(protocol.g_of_t(protocol.t_start()), k);
    detail::Dopri5<Vec2> stepper(rhs, tol, tol);
    auto stats = stepper.integrate(protocol.t_start(), protocol.t_end(), y);
    ModeState state;
    state.k = k;
    state.amp_vac = y(0);
    state.amp_pair = y(1);
    state.steps_accepted = stats.accepted;
    state.steps_rejected = stats.rejected;
    state.norm_drift = std::fabs(y.squaredNorm() - 1.0);
    return state;
}

QuenchResult run_quench(const QuenchProtocol& protocol, double tol,
                        bool record_trajectory, int n_samples, int threads) {
    validate_protocol(protocol);
    if (!(tol > 0.0)) throw std::domain_error("run_quench: need tol > 0");
    if (record_trajectory && n_samples < 2)
        throw std::domain_error("run_quench: need n_samples >= 2");

    MomentumGrid grid = momentum_grid(protocol.n_spins, ParitySector::Positive);
    std::size_t n_modes = grid.size();
    double t0 = protocol.t_start(), t1 = protocol.t_end();

    std::vector<double> sample_times;
    if (record_trajectory) {
        sample_times.resize(n_samples);
        for (int i = 0; i < n_samples; ++i)
            sample_times[i] = t0 + (t1 - t0) * i / (n_samples - 1);
        sample_times.back() = t1;
    }

    // Per-mode outputs, written only by the worker owning the index, so the
    // result is bitwise identical for any thread count.
    std::vector<double> final_log_p(n_modes);
    std::vector<double> drifts(n_modes);
    std::vector<long> steps(n_modes);
    std::vector<std::vector<double>> traj_log_p(
        record_trajectory ? n_modes : 0);

    parallel_for(n_modes, threads, [&](std::size_t i) {
        double k = grid.momentum(i);
        double s = 2.0 * std::sin(k);
        double ck = std::cos(k);
        double tau = protocol.tau_q;
        auto rhs = [s, ck, tau](double t, const Vec2& y, Vec2& dydt) {
            double d = 2.0 * (-t / tau - ck);
            std::complex<double> mi(0.0, -1.0);
            dydt(0) = mi * (-d * y(0) + s * y(1));
            dydt(1) = mi * (s * y(0) + d * y(1));
        };
        Vec2 y = mode_ground_state(protocol.g_of_t(t0), k);
        detail::Dopri5<Vec2> stepper(rhs, tol, tol);
        detail::Dopri5<Vec2>::Stats stats;
        if (record_trajectory) {
            auto& row = traj_log_p[i];
            row.resize(sample_times.size());
            std::size_t next = 0;
            auto observer = [&](const detail::Dopri5<Vec2>::Interpolant& in) {
                while (next < sample_times.size() &&
                       sample_times[next] <= in.t1()) {
                    double ts = sample_times[next];
                    Vec2 ys = in.eval(ts);
                    Vec2 gs = mode_ground_state(protocol.g_of_t(ts), k);
                    double p = overlap_probability(gs, ys) / ys.squaredNorm();
                    row[next] = std::log(p);
                    ++next;
                }
            };
            stats = stepper.integrate(t0, t1, y, true, observer);
            // Rounding in the final clamped step can leave the last sample a
            // few ulps past the last interpolant; it coincides with the final
            // state then.
            while (next < sample_times.size()) {
                if (sample_times[next] < t1 - 1e-9 * (t1 - t0))
                    throw numerical_error(
                        "run_quench: dense output did not cover all samples");
                Vec2 gs = mode_ground_state(protocol.g_end, k);
                row[next] = std::log(overlap_probability(gs, y) /
                                     y.squaredNorm());
                ++next;
            }
        } else {
            stats = stepper.integrate(t0, t1, y);
        }
        // Normalizing the projection cancels the first-order effect of the
        // integrator's norm drift, matching the trajectory samples above.
        Vec2 gs_final = mode_ground_state(protocol.g_end, k);
        final_log_p[i] =
            std::log(overlap_probability(gs_final, y) / y.squaredNorm());
        drifts[i] = std::fabs(y.squaredNorm() - 1.0);
        steps[i] = stats.accepted;
    });

    QuenchResult result;
    result.protocol = protocol;
    double log_p = 0.0;
    double drift = 0.0;
    long total = 0;
    for (std::size_t i = 0; i < n_modes; ++i) { // ordered: deterministic sums
        log_p += final_log_p[i];
        drift = std::max(drift, drifts[i]);
        total += steps[i];
    }
    // The raw projection can exceed 1 by the norm drift; the probability
    // interpretation demands [0, 1].
    result.p_gs_final = std::clamp(std::exp(log_p), 0.0, 1.0);
    result.norm_drift = drift;
    result.total_steps = total;
    if (record_trajectory) {
        result.trajectory.resize(sample_times.size());
        for (std::size_t sidx = 0; sidx < sample_times.size(); ++sidx) {
            double lp = 0.0;
            for (std::size_t i = 0; i < n_modes; ++i)
                lp += traj_log_p[i][sidx];
            double ts = sample_times[sidx];
            result.trajectory[sidx] = TrajectoryPoint{
                ts, protocol.g_of_t(ts), std::clamp(std::exp(lp), 0.0, 1.0)};
        }
    }
    return result;
}

double ghat(double tau_q) {
    if (!(tau_q > 0.0)) throw std::domain_error("ghat: need tau_q > 0");
    return 1.0 / std::sqrt(tau_q);
}

double adiabatic_impulse_p_gs(int n, double tau_q, double c, bool* ngg_ok) {
    if (!(tau_q > 0.0))
        throw std::domain_error("adiabatic_impulse_p_gs: need tau_q > 0");
    if (n < 2) throw std::domain_error("adiabatic_impulse_p_gs: need n >= 2");
    if (ngg_ok) *ngg_ok = n >= 5.0 * std::sqrt(tau_q);
    return 2.0 * std::exp(-n * c / std::sqrt(tau_q));
}

double kz_scaling(int n, double tau_q, CriticalExponents exponents, double c) {
    if (!(tau_q > 0.0)) throw std::domain_error("kz_scaling: need tau_q > 0");
    if (n < 2) throw std::domain_error("kz_scaling: need n >= 2");
    double power = exponents.d * exponents.nu /
                   (1.0 + exponents.z * exponents.nu);
    return std::exp(-n * c / std::pow(tau_q, power));
}

double adiabatic_finite_size(int n, double tau_q) {
    if (!(tau_q > 0.0))
        throw std::domain_error("adiabatic_finite_size: need tau_q > 0");
    if (n < 2) throw std::domain_error("adiabatic_finite_size: need n >= 2");
    return -std::expm1(-2.0 * pi * pi * pi * tau_q /
                       (static_cast<double>(n) * n));
}

FitResult linear_fit(const std::vector<std::pair<double, double>>& points) {
    std::size_t m = points.size();
    if (m < 3) throw std::domain_error("linear_fit: need at least 3 points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if (sxx <= 0.0)
        throw std::domain_error("linear_fit: abscissae are degenerate");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ssr = 0.0;
    for (const auto& [x, y] : points) {
        double r = y - fit.intercept - fit.slope * x;
        ssr += r * r;
    }
    double variance = ssr / (m - 2);
    fit.stderr_slope = std::sqrt(variance / sxx);
    fit.stderr_intercept =
        std::sqrt(variance * (1.0 / m + mean_x * mean_x / sxx));
    // OLS guarantees ssr <= syy; the clamp only absorbs rounding.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    return fit;
}

} // namespace ising
