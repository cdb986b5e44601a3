#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cavsq/cli.hpp"
#include "cavsq/config_io.hpp"
#include "cavsq/coupling.hpp"
#include "cavsq/csv.hpp"
#include "cavsq/figures.hpp"
#include "cavsq/paths.hpp"
#include "cavsq/steady_state.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cavsq;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    const fs::path p = fs::temp_directory_path() / "cavsq_cli_tests";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

// split one CSV line into doubles
std::vector<double> parse_row(const std::string& line)
{
    std::vector<double> out;
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ','))
        out.push_back(std::strtod(cell.c_str(), nullptr));
    return out;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        out.push_back(line);
    return out;
}

int run_cli(const std::string& args, const fs::path& stdout_file)
{
    const std::string cmd = std::string(CAVSQ_CLI_BIN) + " " + args + " > " +
                            stdout_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("config parsing")
{
    const std::string text = R"(# cavity description
gamma_c = 0.8
gamma_s = 0.2
delta = -0.4   # detuning
nu = 0.1
dkl = 6.2831853071795862
alpha_in_mod = 1.5
alpha_in_phase = 7.0
beta_in_mod = 0
beta_in_phase = 0
)";
    const CavityConfig cfg = config_io::parse(text);
    CHECK(cfg.gamma_c == 0.8);
    CHECK(cfg.gamma_s == 0.2);
    CHECK(cfg.delta == -0.4);
    CHECK(cfg.alpha_in_phase > -pi);
    CHECK(cfg.alpha_in_phase <= pi); // wrapped from 7.0

    CHECK_THROWS_AS(config_io::parse("bogus_key = 1\ngamma_c=1\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(config_io::parse("gamma_c = abc\n"), std::runtime_error);
    CHECK_THROWS_AS(config_io::parse("gamma_c 1\n"), std::runtime_error);
    CHECK_THROWS_AS(config_io::parse("gamma_c = 0\ngamma_s = 0\n"),
                    std::invalid_argument);
}

TEST_CASE("number formatting round-trips doubles")
{
    std::mt19937_64 rng(5u);
    for (int i = 0; i < 2000; ++i) {
        const double v =
            std::ldexp(static_cast<double>(rng()) / 1.9e19,
                       static_cast<int>(rng() % 601) - 300);
        const std::string s = csv::format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(csv::format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(csv::format_number(std::nan("")) == "nan");
    CHECK(csv::format_number(1.0) == "1");
}

TEST_CASE("coupling table rows")
{
    const std::string text = figures::coupling_csv(-4.0 * pi, 4.0 * pi, 9);
    const auto rows = lines_of(text);
    REQUIRE(rows.size() == 10); // header + 9
    CHECK(rows[0] == "dkl,k_r,k_i,ki2_minus_3kr2");
    const auto at2pi = parse_row(rows[7]); // x = 2 pi
    CHECK(at2pi[0] == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(std::abs(at2pi[1]) < 1e-12);
    CHECK(at2pi[2] == doctest::Approx(-1.0 / pi).epsilon(1e-12));

    const auto single = lines_of(figures::coupling_csv(0.7, 9.0, 1));
    REQUIRE(single.size() == 2);
    CHECK(parse_row(single[1])[0] == 0.7);
}

TEST_CASE("steady table lists roots with stability")
{
    const paths::Realization r = paths::realize(2.5, 0.0, 0.0, 0.0, 1.0);
    const std::string table = cli::steady_table(r.cfg);
    CHECK(table.find("stable") != std::string::npos);
    CHECK(table.find("yes") != std::string::npos);
    // one header + one root
    CHECK(lines_of(table).size() == 2);
}

TEST_CASE("spectrum table")
{
    const paths::Realization r = paths::realize(2.5, 0.0, 0.0, 0.0, 1.0);

    SUBCASE("phase-matched harmonic point in hat units")
    {
        const std::string text =
            cli::spectrum_csv(r.cfg, 'b', "hat", "lin:0:0:1", -1, false);
        const auto rows = lines_of(text);
        REQUIRE(rows.size() == 2);
        const auto row = parse_row(rows[1]);
        CHECK(row[0] == 0.0);
        const double db = to_db(row[1]);
        CHECK(db > -5.35);
        CHECK(db < -4.95);
    }
    SUBCASE("raw and hat agree at mapped frequencies")
    {
        const std::string raw =
            cli::spectrum_csv(r.cfg, 'b', "raw", "lin:0:0:1", -1, false);
        const std::string hat =
            cli::spectrum_csv(r.cfg, 'b', "hat", "lin:0:0:1", -1, false);
        const auto rrow = parse_row(lines_of(raw)[1]);
        const auto hrow = parse_row(lines_of(hat)[1]);
        CHECK(rrow[1] == doctest::Approx(hrow[1]).epsilon(1e-10));
    }
    SUBCASE("coherent state gives flat unity columns")
    {
        const paths::Realization c = paths::realize(2.5, 0.0, 0.0, 2.5, 1.0);
        const std::string text =
            cli::spectrum_csv(c.cfg, 'a', "raw", "lin:0:4:5", -1, false);
        for (const auto& line : lines_of(text)) {
            if (line.find("omega") == 0)
                continue;
            const auto row = parse_row(line);
            CHECK(row[1] == 1.0);
            CHECK(row[2] == 1.0);
        }
    }
    SUBCASE("several roots require an explicit pick")
    {
        CavityConfig multi;
        multi.gamma_c = 0.6;
        multi.gamma_s = 0.4;
        multi.nu = 0.1;
        multi.dkl = 2.0 * pi;
        multi.delta = 4.0;
        const CouplingFactors cf = coupling::factors_for(multi);
        multi.alpha_in_mod =
            std::sqrt(steady_state::input_power_for_n(multi, cf, 80.0, 0.0));
        CHECK_THROWS_WITH_AS(
            cli::spectrum_csv(multi, 'a', "raw", "default", -1, false),
            doctest::Contains("--root"), std::runtime_error);
        // the middle branch is unstable: refused without the override
        CHECK_THROWS_AS(
            cli::spectrum_csv(multi, 'a', "raw", "lin:0:1:2", 1, false),
            infeasible_error);
        CHECK_NOTHROW(
            cli::spectrum_csv(multi, 'a', "raw", "lin:0:1:2", 1, true));
    }
}

TEST_CASE("figure data is deterministic")
{
    const figures::FigureOutput a = figures::make_figure(5);
    const figures::FigureOutput b = figures::make_figure(5);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
        CHECK(a.files[i].first == b.files[i].first);
        CHECK(a.files[i].second == b.files[i].second);
    }
    CHECK(!a.summary.empty());
}

TEST_CASE("cli end to end")
{
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "stdout.txt";

    SUBCASE("usage errors exit 2")
    {
        CHECK(run_cli("", out) == 2);
        CHECK(run_cli("bogus", out) == 2);
        CHECK(run_cli("coupling --no-such-flag", out) == 2);
        CHECK(run_cli("figure 11 --out " + (dir / "f").string(), out) == 2);
        CHECK(run_cli("steady " + (dir / "missing.cfg").string(), out) == 2);
    }

    SUBCASE("help exits 0")
    {
        CHECK(run_cli("--help", out) == 0);
    }

    SUBCASE("coupling output is bit-identical across runs")
    {
        const fs::path out2 = dir / "stdout2.txt";
        CHECK(run_cli("coupling --dkl-min 0 --dkl-max 12 --samples 101", out) == 0);
        CHECK(run_cli("coupling --dkl-min 0 --dkl-max 12 --samples 101", out2) == 0);
        CHECK(slurp(out) == slurp(out2));
        CHECK(lines_of(slurp(out)).size() == 102);
    }

    SUBCASE("steady and spectrum on a config file")
    {
        const paths::Realization r = paths::realize(2.5, 0.0, 0.0, 0.0, 1.0);
        std::ostringstream cfg;
        cfg.precision(17);
        cfg << "gamma_c = " << r.cfg.gamma_c << "\ngamma_s = " << r.cfg.gamma_s
            << "\ndelta = " << r.cfg.delta << "\nnu = " << r.cfg.nu
            << "\ndkl = " << r.cfg.dkl
            << "\nalpha_in_mod = " << r.cfg.alpha_in_mod
            << "\nalpha_in_phase = " << r.cfg.alpha_in_phase << "\n";
        const fs::path cfg_path = dir / "shg.cfg";
        spit(cfg_path, cfg.str());

        CHECK(run_cli("steady " + cfg_path.string(), out) == 0);
        CHECK(slurp(out).find("yes") != std::string::npos);

        CHECK(run_cli("spectrum " + cfg_path.string() +
                          " --mode b --normalization hat --omega-grid lin:0:0:1",
                      out) == 0);
        const auto rows = lines_of(slurp(out));
        REQUIRE(rows.size() == 2);
        const double db = to_db(parse_row(rows[1])[1]);
        CHECK(db > -5.35);
        CHECK(db < -4.95);
    }

    SUBCASE("unstable branch refused with exit 3 unless overridden")
    {
        CavityConfig multi;
        multi.gamma_c = 0.6;
        multi.gamma_s = 0.4;
        multi.nu = 0.1;
        multi.dkl = 2.0 * pi;
        multi.delta = 4.0;
        const CouplingFactors cf = coupling::factors_for(multi);
        multi.alpha_in_mod =
            std::sqrt(steady_state::input_power_for_n(multi, cf, 80.0, 0.0));
        std::ostringstream cfg;
        cfg.precision(17);
        cfg << "gamma_c = 0.6\ngamma_s = 0.4\nnu = 0.1\ndkl = "
            << multi.dkl << "\ndelta = 4\nalpha_in_mod = "
            << multi.alpha_in_mod << "\n";
        const fs::path cfg_path = dir / "bistable.cfg";
        spit(cfg_path, cfg.str());

        CHECK(run_cli("spectrum " + cfg_path.string(), out) == 2); // needs --root
        CHECK(run_cli("spectrum " + cfg_path.string() + " --root 1", out) == 3);
        CHECK(run_cli("spectrum " + cfg_path.string() +
                          " --root 1 --allow-unstable --omega-grid lin:0:1:3",
                      out) == 0);
    }

    SUBCASE("results do not depend on the worker count")
    {
        const fs::path d1 = dir / "fig_t1";
        const fs::path d2 = dir / "fig_tn";
        fs::remove_all(d1);
        fs::remove_all(d2);
        CHECK(run_cli("figure 2 --out " + d1.string(), out) == 0);
        const std::string cmd = "CAVSQ_THREADS=1 " + std::string(CAVSQ_CLI_BIN) +
                                " figure 2 --out " + d2.string() + " > " +
                                out.string() + " 2>/dev/null";
        REQUIRE(std::system(cmd.c_str()) == 0);
        for (const char* name :
             {"fig2_eta090.csv", "fig2_eta099.csv", "fig2_eta100.csv"})
            CHECK(slurp(d1 / name) == slurp(d2 / name));
    }

    SUBCASE("figure command writes files and summaries")
    {
        const fs::path fdir = dir / "figs";
        fs::remove_all(fdir);
        CHECK(run_cli("figure fig5 --out " + fdir.string(), out) == 0);
        CHECK(fs::exists(fdir / "fig5_factor.csv"));
        const std::string log = slurp(out);
        CHECK(log.find("PASS") != std::string::npos);
        CHECK(log.find("FAIL") == std::string::npos);
    }
}
