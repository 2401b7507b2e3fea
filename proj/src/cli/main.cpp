#include "ising/chi.hpp"
#include "ising/emit.hpp"
#include "ising/errors.hpp"
#include "ising/fidelity.hpp"
#include "ising/model.hpp"
#include "ising/oracle.hpp"
#include "ising/parallel.hpp"
#include "ising/quench.hpp"
#include "ising/scaling.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using ising::Cell;
using ising::Row;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Sweep plumbing

struct SweepFlags {
    std::optional<double> single;
    std::optional<double> min;
    std::optional<double> max;
    long steps = 0;
};

// Registers --<name>, --<name>-min, --<name>-max (+ shared --steps) on a
// subcommand; resolve() turns whatever the user supplied into a grid.
struct SweepOptions {
    SweepFlags flags;
    std::string name;

    void attach(CLI::App* cmd, const std::string& axis,
                const std::string& what) {
        name = axis;
        cmd->add_option("--" + axis, flags.single, "single " + what);
        cmd->add_option("--" + axis + "-min", flags.min, "sweep start");
        cmd->add_option("--" + axis + "-max", flags.max, "sweep end");
        cmd->add_option("--steps", flags.steps, "number of sweep points");
    }

    std::vector<double> resolve() const {
        bool sweep = flags.min.has_value() || flags.max.has_value() ||
                     flags.steps != 0;
        if (flags.single.has_value()) {
            if (sweep)
                throw std::domain_error("--" + name + " excludes --" + name +
                                        "-min/--" + name + "-max/--steps");
            return {*flags.single};
        }
        if (!sweep)
            throw std::domain_error("need --" + name + " or --" + name +
                                    "-min/--" + name + "-max/--steps");
        if (!flags.min || !flags.max || flags.steps == 0)
            throw std::domain_error("sweep needs all of --" + name +
                                    "-min, --" + name + "-max, --steps");
        if (flags.steps < 1) throw std::domain_error("--steps must be >= 1");
        if (*flags.min > *flags.max)
            throw std::domain_error("--" + name + "-min must be <= --" + name +
                                    "-max");
        std::vector<double> grid(flags.steps);
        for (long i = 0; i < flags.steps; ++i)
            grid[i] = flags.steps == 1
                          ? *flags.min
                          : *flags.min + (*flags.max - *flags.min) * i /
                                             (flags.steps - 1);
        return grid;
    }
};

// ---------------------------------------------------------------------------
// Output plumbing

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file)
            throw ising::numerical_error("cannot open output file: " + path);
        stream = &file;
    }

    void finish() {
        stream->flush();
        if (!*stream)
            throw ising::numerical_error("writing output failed");
    }
};

void emit_rows(Output& out, const std::string& format,
               const std::vector<std::string>& header,
               const std::vector<Row>& rows) {
    if (format == "csv") {
        ising::emit_csv(*out.stream, header, rows);
    } else {
        ordered_json doc = ordered_json::array();
        for (const Row& row : rows) {
            ordered_json obj = ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                const Cell& cell = row[i];
                if (std::holds_alternative<long long>(cell))
                    obj[header[i]] = std::get<long long>(cell);
                else if (std::holds_alternative<double>(cell))
                    obj[header[i]] = std::get<double>(cell);
                else
                    obj[header[i]] = std::get<std::string>(cell);
            }
            doc.push_back(std::move(obj));
        }
        *out.stream << doc.dump(2) << '\n';
    }
    out.finish();
}

// Evaluate one row per grid point on the worker pool, collect in input order.
std::vector<Row> sweep_rows(const std::vector<double>& grid, int threads,
                            const std::function<Row(double)>& make_row) {
    std::vector<Row> rows(grid.size());
    ising::parallel_for(grid.size(), threads,
                        [&](std::size_t i) { rows[i] = make_row(grid[i]); });
    return rows;
}

const char* regime_name(ising::GapRegime regime) {
    switch (regime) {
        case ising::GapRegime::Ferro: return "Ferro";
        case ising::GapRegime::Para: return "Para";
        default: return "Critical";
    }
}

// ---------------------------------------------------------------------------
// Subcommand state

struct CommonFlags {
    std::string output;
    std::string format = "csv";
    int threads = 0;

    void attach(CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--output,-o", output,
                        "output file (default: standard output)");
        if (with_format)
            cmd->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}))
                ->capture_default_str();
        cmd->add_option("--threads", threads,
                        "worker threads (0 = ISING_THREADS env or hardware)");
    }
};

struct ChiCmd {
    int n = 0;
    SweepOptions g;
    CommonFlags common;

    int run() const {
        auto grid = g.resolve();
        Output out(common.output);
        auto rows = sweep_rows(grid, common.threads, [this](double gv) {
            return Row{gv, static_cast<long long>(n),
                       ising::chi_exact(gv, n).chi, ising::chi_plus(gv, n).chi,
                       ising::chi_minus(gv, n).chi};
        });
        emit_rows(out, common.format,
                  {"g", "n", "chi_exact", "chi_plus", "chi_minus"}, rows);
        return 0;
    }
};

struct FidelityCmd {
    int n = 0;
    double delta = 0.0;
    SweepOptions g;
    CommonFlags common;

    int run() const {
        auto grid = g.resolve();
        Output out(common.output);
        auto rows = sweep_rows(grid, common.threads, [this](double gv) {
            ising::FidelityResult f = ising::fidelity(gv, delta, n);
            return Row{gv, delta, static_cast<long long>(n), f.value,
                       f.log_per_site};
        });
        emit_rows(out, common.format, {"g", "delta", "n", "F", "lnF_per_site"},
                  rows);
        return 0;
    }
};

struct ScalingCmd {
    SweepOptions c;
    CommonFlags common;

    int run() const {
        auto grid = c.resolve();
        Output out(common.output);
        auto rows = sweep_rows(grid, common.threads, [](double cv) {
            return Row{cv, ising::scaling_A(cv).a_value};
        });
        emit_rows(out, common.format, {"c", "A"}, rows);
        return 0;
    }
};

struct GapCmd {
    int n = 0;
    double tol = 1e-10;
    SweepOptions g;
    CommonFlags common;

    int run() const {
        auto grid = g.resolve();
        Output out(common.output);
        auto rows = sweep_rows(grid, common.threads, [this](double gv) {
            ising::GapResult gap = ising::parity_gap(gv, n, tol);
            return Row{gv, static_cast<long long>(n), gap.value,
                       std::string(regime_name(gap.regime))};
        });
        emit_rows(out, common.format, {"g", "n", "gap", "regime"}, rows);
        return 0;
    }
};

struct QuenchCmd {
    int n = 0;
    double tau_q = 0.0;
    double g_start = 5.0;
    double g_end = 0.0;
    double tol = 1e-10;
    int samples = 200;
    CommonFlags common;

    int run() const {
        ising::QuenchProtocol protocol{tau_q, n, g_start, g_end};
        ising::QuenchResult result = ising::run_quench(
            protocol, tol, true, samples, common.threads);
        Output out(common.output);
        std::vector<Row> rows;
        rows.reserve(result.trajectory.size());
        for (const auto& point : result.trajectory)
            rows.push_back(Row{point.t, point.g, point.p_instantaneous});
        emit_rows(out, common.format, {"t", "g", "p_instantaneous"}, rows);
        return 0;
    }
};

// Shared by fit-size and fit-tau: run the quenches, fit, emit JSON.
int emit_fit(const CommonFlags& common, const std::string& x_name,
             const std::vector<double>& x_values,
             const std::function<double(double)>& ln_p_of_x,
             const std::function<double(double)>& fit_abscissa) {
    std::vector<double> ln_p(x_values.size());
    for (std::size_t i = 0; i < x_values.size(); ++i)
        ln_p[i] = ln_p_of_x(x_values[i]);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(x_values.size());
    for (std::size_t i = 0; i < x_values.size(); ++i)
        pts.emplace_back(fit_abscissa(x_values[i]), ln_p[i]);
    ising::FitResult fit = ising::linear_fit(pts);

    ordered_json doc;
    doc["intercept"] = fit.intercept;
    doc["slope"] = fit.slope;
    doc["stderr_intercept"] = fit.stderr_intercept;
    doc["stderr_slope"] = fit.stderr_slope;
    doc["r_squared"] = fit.r_squared;
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < x_values.size(); ++i) {
        ordered_json p;
        p[x_name] = x_values[i];
        p["x"] = pts[i].first;
        p["ln_p_gs"] = ln_p[i];
        points.push_back(std::move(p));
    }
    doc["points"] = std::move(points);

    Output out(common.output);
    *out.stream << doc.dump(2) << '\n';
    out.finish();
    return 0;
}

struct FitSizeCmd {
    double tau_q = 50.0;
    int n_min = 100;
    int n_max = 1000;
    int n_step = 100;
    double g_start = 5.0;
    double g_end = 0.0;
    double tol = 1e-10;
    CommonFlags common;

    int run() const {
        if (n_step <= 0 || n_min < 2 || n_min > n_max)
            throw std::domain_error("fit-size: need 2 <= n-min <= n-max and "
                                    "n-step > 0");
        std::vector<double> sizes;
        for (int n = n_min; n <= n_max; n += n_step) sizes.push_back(n);
        return emit_fit(
            common, "n", sizes,
            [this](double n) {
                ising::QuenchProtocol protocol{tau_q, static_cast<int>(n),
                                               g_start, g_end};
                return std::log(ising::run_quench(protocol, tol, false, 200,
                                                  common.threads)
                                    .p_gs_final);
            },
            [](double n) { return n; });
    }
};

struct FitTauCmd {
    int n = 150;
    double tau_min = 50.0;
    double tau_max = 150.0;
    double tau_step = 10.0;
    double g_start = 5.0;
    double g_end = 0.0;
    double tol = 1e-10;
    CommonFlags common;

    int run() const {
        if (tau_step <= 0.0 || tau_min <= 0.0 || tau_min > tau_max)
            throw std::domain_error("fit-tau: need 0 < tau-min <= tau-max and "
                                    "tau-step > 0");
        std::vector<double> taus;
        for (double tau = tau_min; tau <= tau_max + 1e-9 * tau_step;
             tau += tau_step)
            taus.push_back(tau);
        return emit_fit(
            common, "tau_q", taus,
            [this](double tau) {
                ising::QuenchProtocol protocol{tau, n, g_start, g_end};
                return std::log(ising::run_quench(protocol, tol, false, 200,
                                                  common.threads)
                                    .p_gs_final);
            },
            [](double tau) { return 1.0 / std::sqrt(tau); });
    }
};

struct OracleCmd {
    int n = 8;
    double g = 1.2;
    double delta = 0.05;
    double tau_q = 5.0;
    double tol = 1e-10;
    CommonFlags common;

    int run() const {
        std::vector<Row> rows;
        auto add = [&rows](const std::string& name, double reference,
                           double oracle) {
            rows.push_back(Row{name, reference, oracle,
                               std::fabs(reference - oracle)});
        };

        add("fidelity", ising::fidelity(g, delta, n).value,
            ising::oracle_fidelity(g, delta, n));
        add("parity_gap", ising::parity_gap(g, n, tol).value,
            ising::oracle_parity_gap(g, n));
        add("ground_energy_positive",
            ising::sector_ground_energy(g, n, ising::ParitySector::Positive),
            ising::dense_ground_state(g, n, ising::ParitySector::Positive)
                .energy);
        add("ground_energy_negative",
            ising::sector_ground_energy(g, n, ising::ParitySector::Negative),
            ising::dense_ground_state(g, n, ising::ParitySector::Negative)
                .energy);
        if (n % 2 == 0 && n <= 10) {
            ising::QuenchProtocol protocol{tau_q, n};
            add("quench_p_gs",
                ising::run_quench(protocol, tol, false, 200, common.threads)
                    .p_gs_final,
                ising::oracle_quench(protocol, tol));
        }

        Output out(common.output);
        emit_rows(out, common.format,
                  {"quantity", "reference", "oracle", "abs_diff"}, rows);
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Ground-state fidelity and quench dynamics of the transverse-field "
        "Ising chain"};
    app.require_subcommand(1);

    ChiCmd chi;
    auto* chi_cmd = app.add_subcommand(
        "chi", "fidelity susceptibility: exact and per-sector closed forms");
    chi_cmd->add_option("--n", chi.n, "number of spins")->required();
    chi.g.attach(chi_cmd, "g", "magnetic field");
    chi.common.attach(chi_cmd);

    FidelityCmd fid;
    auto* fid_cmd = app.add_subcommand(
        "fidelity", "ground-state overlap F(g-delta, g+delta)");
    fid_cmd->add_option("--n", fid.n, "number of spins")->required();
    fid_cmd->add_option("--delta", fid.delta, "half-shift of the field")
        ->required();
    fid.g.attach(fid_cmd, "g", "mean magnetic field");
    fid.common.attach(fid_cmd);

    ScalingCmd scaling;
    auto* scaling_cmd = app.add_subcommand(
        "scaling", "thermodynamic fidelity scaling function A(c)");
    scaling.c.attach(scaling_cmd, "c", "scaling variable (g-1)/|delta|");
    scaling.common.attach(scaling_cmd);

    GapCmd gap;
    auto* gap_cmd = app.add_subcommand(
        "gap", "energy splitting between the parity-sector ground states");
    gap_cmd->add_option("--n", gap.n, "number of spins")->required();
    gap_cmd->add_option("--tol", gap.tol, "quadrature tolerance")
        ->capture_default_str();
    gap.g.attach(gap_cmd, "g", "magnetic field");
    gap.common.attach(gap_cmd);

    QuenchCmd quench;
    auto* quench_cmd = app.add_subcommand(
        "quench", "ramp g(t) = -t/tau_Q across the critical point");
    quench_cmd->add_option("--n", quench.n, "number of spins (even)")
        ->required();
    quench_cmd->add_option("--tau-q", quench.tau_q, "quench time scale")
        ->required();
    quench_cmd->add_option("--g-start", quench.g_start, "initial field")
        ->capture_default_str();
    quench_cmd->add_option("--g-end", quench.g_end, "final field")
        ->capture_default_str();
    quench_cmd->add_option("--tol", quench.tol, "integrator tolerance")
        ->capture_default_str();
    quench_cmd
        ->add_option("--samples", quench.samples,
                     "trajectory sample count")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    quench.common.attach(quench_cmd);

    FitSizeCmd fit_size;
    auto* fit_size_cmd = app.add_subcommand(
        "fit-size", "linear fit of ln p_GS vs N at fixed tau_Q (JSON)");
    fit_size_cmd->add_option("--tau-q", fit_size.tau_q, "quench time scale")
        ->capture_default_str();
    fit_size_cmd->add_option("--n-min", fit_size.n_min, "smallest N")
        ->capture_default_str();
    fit_size_cmd->add_option("--n-max", fit_size.n_max, "largest N")
        ->capture_default_str();
    fit_size_cmd->add_option("--n-step", fit_size.n_step, "N increment")
        ->capture_default_str();
    fit_size_cmd->add_option("--g-start", fit_size.g_start, "initial field")
        ->capture_default_str();
    fit_size_cmd->add_option("--g-end", fit_size.g_end, "final field")
        ->capture_default_str();
    fit_size_cmd->add_option("--tol", fit_size.tol, "integrator tolerance")
        ->capture_default_str();
    fit_size.common.attach(fit_size_cmd, false);

    FitTauCmd fit_tau;
    auto* fit_tau_cmd = app.add_subcommand(
        "fit-tau", "linear fit of ln p_GS vs 1/sqrt(tau_Q) at fixed N (JSON)");
    fit_tau_cmd->add_option("--n", fit_tau.n, "number of spins (even)")
        ->capture_default_str();
    fit_tau_cmd->add_option("--tau-min", fit_tau.tau_min, "smallest tau_Q")
        ->capture_default_str();
    fit_tau_cmd->add_option("--tau-max", fit_tau.tau_max, "largest tau_Q")
        ->capture_default_str();
    fit_tau_cmd->add_option("--tau-step", fit_tau.tau_step, "tau_Q increment")
        ->capture_default_str();
    fit_tau_cmd->add_option("--g-start", fit_tau.g_start, "initial field")
        ->capture_default_str();
    fit_tau_cmd->add_option("--g-end", fit_tau.g_end, "final field")
        ->capture_default_str();
    fit_tau_cmd->add_option("--tol", fit_tau.tol, "integrator tolerance")
        ->capture_default_str();
    fit_tau.common.attach(fit_tau_cmd, false);

    OracleCmd oracle;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "dense-diagonalization spot checks of the closed forms");
    oracle_cmd->add_option("--n", oracle.n, "number of spins (<= 12)")
        ->capture_default_str();
    oracle_cmd->add_option("--g", oracle.g, "magnetic field")
        ->capture_default_str();
    oracle_cmd->add_option("--delta", oracle.delta, "fidelity half-shift")
        ->capture_default_str();
    oracle_cmd->add_option("--tau-q", oracle.tau_q, "quench time scale")
        ->capture_default_str();
    oracle_cmd->add_option("--tol", oracle.tol, "tolerance")
        ->capture_default_str();
    oracle.common.attach(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message and usage hint to stderr
        return 2;
    }

    try {
        if (app.got_subcommand(chi_cmd)) return chi.run();
        if (app.got_subcommand(fid_cmd)) return fid.run();
        if (app.got_subcommand(scaling_cmd)) return scaling.run();
        if (app.got_subcommand(gap_cmd)) return gap.run();
        if (app.got_subcommand(quench_cmd)) return quench.run();
        if (app.got_subcommand(fit_size_cmd)) return fit_size.run();
        if (app.got_subcommand(fit_tau_cmd)) return fit_tau.run();
        if (app.got_subcommand(oracle_cmd)) return oracle.run();
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
