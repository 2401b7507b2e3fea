#include "ising/oracle.hpp"

#include "ising/detail/dopri5.hpp"
#include "ising/errors.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ising {

namespace {

constexpr int max_dense_spins = 12;

void check_size(int n, const char* who) {
    if (n < 2) throw std::domain_error(std::string(who) + ": need n >= 2");
    if (n > max_dense_spins)
        throw std::domain_error(std::string(who) +
                                ": dense diagonalization capped at n = 12");
}

// Basis states of one parity block: spin i is bit i (0 = up, 1 = down), so
// P = (-1)^popcount and sigma^z_i has eigenvalue 1 - 2 * bit_i.
struct ParityBlock {
    int n_spins;
    std::vector<unsigned> states;        // bit patterns, increasing
    std::vector<int> index_of;           // 2^n -> block index (or -1)

    ParityBlock(int n, ParitySector sector) : n_spins(n) {
        unsigned total = 1u << n;
        bool odd = (sector == ParitySector::Negative);
        index_of.assign(total, -1);
        states.reserve(total / 2);
        for (unsigned s = 0; s < total; ++s) {
            if ((std::popcount(s) % 2 == 1) == odd) {
                index_of[s] = static_cast<int>(states.size());
                states.push_back(s);
            }
        }
    }

    std::size_t dim() const { return states.size(); }

    // H = -sum_i sigma^x_i sigma^x_{i+1} - g sum_i sigma^z_i, periodic.
    Eigen::MatrixXd hamiltonian(double g) const {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
        for (std::size_t a = 0; a < dim(); ++a) {
            unsigned s = states[a];
            h(a, a) = -g * (n_spins - 2 * std::popcount(s));
            for (int i = 0; i < n_spins; ++i) {
                unsigned mask = (1u << i) | (1u << ((i + 1) % n_spins));
                int b = index_of[s ^ mask];
                h(b, a) -= 1.0;
            }
        }
        return h;
    }
};

struct BlockGround {
    Eigen::VectorXd vector;
    double energy;
};

BlockGround block_ground(const ParityBlock& block, double g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.hamiltonian(g));
    if (solver.info() != Eigen::Success)
        throw numerical_error("dense_ground_state: eigensolver failed");
    return BlockGround{solver.eigenvectors().col(0), solver.eigenvalues()(0)};
}

double block_ground_energy(const ParityBlock& block, double g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(block.hamiltonian(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("oracle: eigensolver failed");
    return solver.eigenvalues()(0);
}

// Lift the block-internal eigenvector into the full 2^n space.
DenseState embed(const ParityBlock& block, ParitySector sector,
                 const BlockGround& ground) {
    Eigen::VectorXcd full =
        Eigen::VectorXcd::Zero(1L << block.n_spins);
    for (std::size_t i = 0; i < block.dim(); ++i)
        full(block.states[i]) = ground.vector(i);
    return DenseState{block.n_spins, sector, std::move(full), ground.energy};
}

} // namespace

DenseState dense_ground_state(double g, int n,
                              std::optional<ParitySector> sector) {
    check_size(n, "dense_ground_state");
    if (sector) {
        ParityBlock block(n, *sector);
        return embed(block, *sector, block_ground(block, g));
    }
    ParityBlock pos(n, ParitySector::Positive);
    ParityBlock neg(n, ParitySector::Negative);
    BlockGround gp = block_ground(pos, g);
    BlockGround gn = block_ground(neg, g);
    if (gp.energy <= gn.energy) return embed(pos, ParitySector::Positive, gp);
    return embed(neg, ParitySector::Negative, gn);
}

double oracle_fidelity(double g, double delta, int n) {
    check_size(n, "oracle_fidelity");
    ParitySector sp = ground_state_parity(g + delta, n);
    ParitySector sm = ground_state_parity(g - delta, n);
    if (sp != sm)
        throw std::domain_error(
            "oracle_fidelity: endpoints lie in different parity sectors");
    DenseState a = dense_ground_state(g - delta, n, sp);
    DenseState b = dense_ground_state(g + delta, n, sp);
    return std::abs(a.amplitudes.dot(b.amplitudes));
}

double oracle_parity_gap(double g, int n) {
    check_size(n, "oracle_parity_gap");
    ParityBlock pos(n, ParitySector::Positive);
    ParityBlock neg(n, ParitySector::Negative);
    return block_ground_energy(neg, g) - block_ground_energy(pos, g);
}

double oracle_quench(const QuenchProtocol& protocol, double tol) {
    int n = protocol.n_spins;
    if (n < 2 || n > 10)
        throw std::domain_error(
            "oracle_quench: full-state evolution capped at n = 10");
    if (n % 2 != 0)
        throw std::domain_error("oracle_quench: n_spins must be even");
    if (!(protocol.tau_q > 0.0) || !(protocol.g_start > protocol.g_end) ||
        protocol.g_end < 0.0)
        throw std::domain_error("oracle_quench: invalid ramp");
    if (!(tol > 0.0)) throw std::domain_error("oracle_quench: need tol > 0");

    ParityBlock block(n, ParitySector::Positive);
    std::size_t dim = block.dim();

    // H(g) = A + g D with A the bond-flip part and D diagonal; precompute
    // the flip targets so the hot matvec is table-driven.
    std::vector<int> flip(dim * n);
    std::vector<double> diag(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        unsigned s = block.states[a];
        diag[a] = -static_cast<double>(n - 2 * std::popcount(s));
        for (int i = 0; i < n; ++i) {
            unsigned mask = (1u << i) | (1u << ((i + 1) % n));
            flip[a * n + i] = block.index_of[s ^ mask];
        }
    }

    double tau = protocol.tau_q;
    auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt) {
        double g = -t / tau;
        std::complex<double> mi(0.0, -1.0);
        for (std::size_t a = 0; a < dim; ++a) {
            std::complex<double> acc = g * diag[a] * y(a);
            for (int i = 0; i < n; ++i) acc -= y(flip[a * n + i]);
            dydt(a) = mi * acc;
        }
    };

    auto block_components = [&](const DenseState& state) {
        Eigen::VectorXcd v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            v(i) = state.amplitudes(block.states[i]);
        return v;
    };
    Eigen::VectorXcd psi = block_components(
        dense_ground_state(protocol.g_start, n, ParitySector::Positive));
    detail::Dopri5<Eigen::VectorXcd> stepper(rhs, tol, tol);
    stepper.integrate(protocol.t_start(), protocol.t_end(), psi);
    Eigen::VectorXcd target = block_components(
        dense_ground_state(protocol.g_end, n, ParitySector::Positive));
    // Normalized projection, insensitive to the integrator's norm drift.
    return std::norm(target.dot(psi)) / psi.squaredNorm();
}

} // namespace ising
