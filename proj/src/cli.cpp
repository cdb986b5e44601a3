#include "cavsq/cli.hpp"

#include "cavsq/config_io.hpp"
#include "cavsq/coupling.hpp"
#include "cavsq/csv.hpp"
#include "cavsq/figures.hpp"
#include "cavsq/spectra.hpp"
#include "cavsq/stability.hpp"
#include "cavsq/steady_state.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace cavsq::cli {

namespace {

std::vector<double> parse_grid(const std::string& spec, double gamma_t)
{
    if (spec == "default")
        return spectra::default_omega_grid(gamma_t);
    char kind[8] = {};
    double lo = 0, hi = 0;
    int n = 0;
    if (std::sscanf(spec.c_str(), "%7[a-z]:%lf:%lf:%d", kind, &lo, &hi, &n) != 4 ||
        n < 1)
        throw std::runtime_error("bad --omega-grid spec '" + spec +
                                 "' (want default | lin:LO:HI:N | log:LO:HI:N)");
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(n));
    const std::string k = kind;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        if (k == "lin")
            grid.push_back(lo + (hi - lo) * t);
        else if (k == "log") {
            if (!(lo > 0.0 && hi > 0.0))
                throw std::runtime_error("log grid needs positive bounds");
            grid.push_back(lo * std::pow(hi / lo, t));
        } else
            throw std::runtime_error("unknown grid kind '" + k + "'");
    }
    return grid;
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << text;
    else
        csv::write_file(out_path, text);
}

double db_or_inf(double s)
{
    if (s < 0.0 && s > -1e-12)
        s = 0.0; // rounding dust on perfect squeezing
    return to_db(s);
}

} // namespace

std::string steady_table(const CavityConfig& cfg)
{
    const CouplingFactors cf = coupling::factors_for(cfg);
    const std::vector<double> roots = steady_state::solve_n(cfg, cf);
    std::ostringstream os;
    os << "root  " << std::setw(24) << "n" << std::setw(24) << "theta"
       << std::setw(24) << "Re(lambda+)" << std::setw(24) << "Im(lambda+)"
       << std::setw(24) << "Re(lambda-)" << std::setw(24) << "Im(lambda-)"
       << "  stable" << std::setw(14) << "residual" << '\n';
    os << std::setprecision(15) << std::scientific;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        steady_state::SteadyState ss;
        bool degenerate = false;
        try {
            ss = steady_state::make_steady_state(cfg, cf, roots[i]);
        } catch (const degenerate_error&) {
            degenerate = true;
            ss.n = roots[i];
        }
        os << std::setw(4) << i << "  " << std::setw(24) << ss.n;
        if (degenerate) {
            os << std::setw(24) << "degenerate-phase" << '\n';
            continue;
        }
        const auto rep = stability::eigenvalues(cfg, cf, ss);
        os << std::setw(24) << ss.theta << std::setw(24)
           << rep.lambda_plus.real() << std::setw(24) << rep.lambda_plus.imag()
           << std::setw(24) << rep.lambda_minus.real() << std::setw(24)
           << rep.lambda_minus.imag() << "  " << (rep.stable ? "yes" : "no ")
           << std::setw(14) << std::setprecision(3) << ss.residual
           << std::setprecision(15) << '\n';
    }
    if (roots.empty())
        os << "(no fixed points)\n";
    return os.str();
}

std::string spectrum_csv(const CavityConfig& cfg, char mode,
                         const std::string& normalization,
                         const std::string& grid_spec, int root_index,
                         bool allow_unstable)
{
    if (mode != 'a' && mode != 'b')
        throw std::runtime_error("--mode must be a or b");
    if (normalization != "raw" && normalization != "hat")
        throw std::runtime_error("--normalization must be raw or hat");

    const CouplingFactors cf = coupling::factors_for(cfg);
    const std::vector<double> roots = steady_state::solve_n(cfg, cf);
    if (roots.empty())
        throw std::runtime_error("no fixed point to analyze");
    if (root_index < 0) {
        if (roots.size() > 1) {
            std::ostringstream os;
            os << "several fixed points; pick one with --root:";
            for (std::size_t i = 0; i < roots.size(); ++i)
                os << " [" << i << "] n=" << roots[i];
            throw std::runtime_error(os.str());
        }
        root_index = 0;
    }
    if (static_cast<std::size_t>(root_index) >= roots.size())
        throw std::runtime_error("--root out of range");

    const auto ss = steady_state::make_steady_state(
        cfg, cf, roots[static_cast<std::size_t>(root_index)]);
    const auto rep = stability::eigenvalues(cfg, cf, ss);
    if (!rep.stable && !allow_unstable)
        throw infeasible_error(
            "selected fixed point is unstable; pass --allow-unstable to "
            "compute flagged non-physical spectra");

    const NormalizedParams np = normalize(cfg, cf, ss.n, ss.theta);
    const bool hat = normalization == "hat";
    const double grid_scale = hat ? np.gamma_t / cfg.gamma() : np.gamma_t;
    const std::vector<double> grid = parse_grid(grid_spec, grid_scale);

    csv::Writer w({"omega", "s_minus", "s_plus", "s_minus_db", "s_plus_db",
                   "theta_m"});
    for (double omega : grid) {
        spectra::SpectrumResult r;
        if (hat) {
            auto [fund, harm] = spectra::hat_spectra(
                np.m, np.eta_in, cfg.delta / cfg.gamma(), cf,
                cfg.gamma_c / cfg.gamma(), omega);
            r = mode == 'a' ? fund : harm;
        } else {
            auto [fund, harm] = spectra::raw_spectra(cfg, cf, ss, omega);
            r = mode == 'a' ? fund : harm;
        }
        w.row(std::vector<double>{omega, r.s_minus, r.s_plus,
                                  db_or_inf(r.s_minus), db_or_inf(r.s_plus),
                                  r.theta_m});
    }
    return w.text();
}

int run(int argc, const char* const* argv)
{
    CLI::App app{"linearized quantum noise of a singly resonant second-order "
                 "nonlinear cavity: fixed points, stability, squeezing "
                 "spectra, optimum paths"};
    app.require_subcommand(1);

    double dkl_min = -4.0 * pi, dkl_max = 4.0 * pi;
    int samples = 801;
    std::string out_path;
    auto* cmd_coupling =
        app.add_subcommand("coupling", "tabulate the mismatch coupling factors");
    cmd_coupling->add_option("--dkl-min", dkl_min, "range start");
    cmd_coupling->add_option("--dkl-max", dkl_max, "range end");
    cmd_coupling->add_option("--samples", samples, "number of rows")
        ->check(CLI::PositiveNumber);
    cmd_coupling->add_option("--out", out_path, "output file (default stdout)");

    std::string config_path;
    auto* cmd_steady =
        app.add_subcommand("steady", "fixed points and their stability");
    cmd_steady->add_option("config", config_path, "key=value cavity file")
        ->required();

    std::string mode = "a", normalization = "raw", grid_spec = "default";
    int root_index = -1;
    bool allow_unstable = false;
    std::string spec_config, spec_out;
    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "squeezing spectra around a fixed point");
    cmd_spectrum->add_option("config", spec_config, "key=value cavity file")
        ->required();
    cmd_spectrum->add_option("--mode", mode, "a (fundamental) or b (harmonic)");
    cmd_spectrum->add_option("--normalization", normalization, "raw or hat");
    cmd_spectrum->add_option("--omega-grid", grid_spec,
                             "default | lin:LO:HI:N | log:LO:HI:N");
    cmd_spectrum->add_option("--root", root_index, "fixed-point index");
    cmd_spectrum->add_flag("--allow-unstable", allow_unstable,
                           "compute flagged spectra at unstable points");
    cmd_spectrum->add_option("--out", spec_out, "output file (default stdout)");

    std::string fig_id, fig_dir = ".";
    auto* cmd_figure =
        app.add_subcommand("figure", "emit the tabular data behind one figure");
    cmd_figure->add_option("fig", fig_id, "figure number 1..10 (or figN)")
        ->required();
    cmd_figure->add_option("--out", fig_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (app.got_subcommand(cmd_coupling)) {
            emit(figures::coupling_csv(dkl_min, dkl_max, samples), out_path);
            return exit_ok;
        }
        if (app.got_subcommand(cmd_steady)) {
            const CavityConfig cfg = config_io::load(config_path);
            std::cout << steady_table(cfg);
            return exit_ok;
        }
        if (app.got_subcommand(cmd_spectrum)) {
            const CavityConfig cfg = config_io::load(spec_config);
            emit(spectrum_csv(cfg, mode.empty() ? 'a' : mode[0], normalization,
                              grid_spec, root_index, allow_unstable),
                 spec_out);
            return exit_ok;
        }
        if (app.got_subcommand(cmd_figure)) {
            std::string id = fig_id;
            if (id.rfind("fig", 0) == 0)
                id = id.substr(3);
            int n = 0;
            try {
                n = std::stoi(id);
            } catch (...) {
                std::cerr << "figure id must be 1..10 or fig1..fig10\n";
                return exit_usage;
            }
            const figures::FigureOutput fig = figures::make_figure(n);
            figures::write_figure(fig, fig_dir);
            for (const std::string& line : fig.summary)
                std::cout << line << '\n';
            for (const auto& [name, text] : fig.files)
                std::cout << "wrote " << (std::filesystem::path(fig_dir) / name).string()
                          << '\n';
            return exit_ok;
        }
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const solve_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const degenerate_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}

} // namespace cavsq::cli
