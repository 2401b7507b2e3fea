#pragma once

#include "ising/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

namespace ising::detail {

/// Adaptive Dormand-Prince 5(4) integrator with the classic dense-output
/// interpolant. State must support axpy-style arithmetic via the Eigen
/// expression interface (Vector2cd, VectorXcd, ...). The error norm is the
/// usual mixed absolute/relative max norm; steps are accepted when it is
/// <= 1 and the step size follows the standard 0.9 err^(-1/5) controller,
/// clamped to [0.2, 5] per step.
///
/// Observer (optional) is called after every accepted step with the dense
/// interpolant for that step, enabling output at arbitrary times without
/// constraining the step sequence.
template <class State>
class Dopri5 {
  public:
    using Rhs = std::function<void(double t, const State& y, State& dydt)>;

    struct Stats {
        long accepted = 0;
        long rejected = 0;
    };

    /// Dense-output view of one accepted step [t0, t0 + h].
    class Interpolant {
      public:
        Interpolant(double t0, double h, const State* rcont)
            : t0_(t0), h_(h), rcont_(rcont) {}
        double t0() const { return t0_; }
        double t1() const { return t0_ + h_; }
        State eval(double t) const {
            double theta = (t - t0_) / h_;
            double theta1 = 1.0 - theta;
            return rcont_[0] +
                   theta * (rcont_[1] +
                            theta1 * (rcont_[2] +
                                      theta * (rcont_[3] + theta1 * rcont_[4])));
        }

      private:
        double t0_;
        double h_;
        const State* rcont_;
    };

    using Observer = std::function<void(const Interpolant&)>;

    Dopri5(Rhs rhs, double atol, double rtol)
        : rhs_(std::move(rhs)), atol_(atol), rtol_(rtol) {}

    /// Integrates y from t0 to t1 (t1 > t0) in place; returns step counts.
    /// want_dense must be true for the observer to receive interpolants.
    Stats integrate(double t0, double t1, State& y, bool want_dense = false,
                    const Observer& observer = {}) {
        Stats stats;
        double t = t0;
        State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
        State ytmp = y, ynew = y, yerr = y;
        rhs_(t, y, k1); // FSAL: k1 of the next step is k7 of the last
        double h = initial_step(t0, t1, y, k1);
        while (t < t1) {
            if (t + h > t1) h = t1 - t;
            if (!(h > 0.0) || t + h == t)
                throw numerical_error(
                    "dopri5: step size underflow at t = " + std::to_string(t));

            ytmp = y + h * (a21 * k1);
            rhs_(t + c2 * h, ytmp, k2);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            rhs_(t + c3 * h, ytmp, k3);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs_(t + c4 * h, ytmp, k4);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs_(t + c5 * h, ytmp, k5);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs_(t + h, ytmp, k6);
            ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs_(t + h, ynew, k7);
            yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err = error_norm(y, ynew, yerr);
            if (err <= 1.0) {
                if (want_dense && observer) {
                    State dy = ynew - y;
                    rcont_[0] = y;
                    rcont_[1] = dy;
                    rcont_[2] = h * k1 - dy;
                    rcont_[3] = dy - h * k7 - rcont_[2];
                    rcont_[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 +
                                     d6 * k6 + d7 * k7);
                    observer(Interpolant(t, h, rcont_));
                }
                t += h;
                y = ynew;
                k1 = k7;
                ++stats.accepted;
            } else {
                ++stats.rejected;
            }
            double factor =
                err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
        }
        return stats;
    }

  private:
    double error_norm(const State& y0, const State& y1, const State& yerr) const {
        double norm = 0.0;
        for (long i = 0; i < static_cast<long>(y0.size()); ++i) {
            double scale =
                atol_ + rtol_ * std::max(std::abs(y0[i]), std::abs(y1[i]));
            norm = std::max(norm, std::abs(yerr[i]) / scale);
        }
        return norm;
    }

    /// Conservative first step from the norms of y and y' (then the
    /// controller adapts within a few steps).
    double initial_step(double t0, double t1, const State& y, const State& dydt) const {
        double ynorm = 0.0, dnorm = 0.0;
        for (long i = 0; i < static_cast<long>(y.size()); ++i) {
            ynorm = std::max(ynorm, std::abs(y[i]));
            dnorm = std::max(dnorm, std::abs(dydt[i]));
        }
        double h = (dnorm > 1e-12) ? 0.01 * (ynorm + atol_) / dnorm : 1e-6;
        return std::min(h, (t1 - t0) / 10.0);
    }

    Rhs rhs_;
    double atol_;
    double rtol_;
    State rcont_[5];

    // Dormand & Prince (1980) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // 5th-order minus embedded 4th-order weights.
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
    // Dense-output coefficients (Hairer, Norsett & Wanner, II.5).
    static constexpr double d1 = -12715105075.0 / 11282082432.0;
    static constexpr double d3 = 87487479700.0 / 32700410799.0;
    static constexpr double d4 = -10690763975.0 / 1880347072.0;
    static constexpr double d5 = 701980252875.0 / 199316789632.0;
    static constexpr double d6 = -1453857185.0 / 822651844.0;
    static constexpr double d7 = 69997945.0 / 29380423.0;
};

} // namespace ising::detail
