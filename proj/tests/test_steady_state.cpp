#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cavsq/coupling.hpp"
#include "cavsq/steady_state.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace cavsq;
using namespace cavsq::steady_state;

namespace {

std::mt19937 rng(2024u);
double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CavityConfig random_config(bool with_harmonic_drive = true)
{
    CavityConfig cfg;
    cfg.gamma_c = uniform(0.2, 2.0);
    cfg.gamma_s = uniform(0.0, 1.5);
    cfg.delta = uniform(-3.0, 3.0);
    cfg.nu = uniform(0.01, 1.0);
    cfg.dkl = uniform(-10.0, 10.0);
    cfg.alpha_in_mod = uniform(0.0, 3.0);
    cfg.alpha_in_phase = uniform(-pi, pi);
    if (with_harmonic_drive) {
        cfg.beta_in_mod = uniform(0.0, 1.5);
        cfg.beta_in_phase = uniform(-pi, pi);
    }
    return cfg;
}

// Fully expanded polynomial coefficients written out independently from the
// incremental composition used by the library.
std::array<double, 6> expanded_oracle(const CavityConfig& cfg,
                                      const CouplingFactors& cf)
{
    const double g = cfg.gamma(), d = cfg.delta;
    const double mu = cf.mu, G = cf.gamma_cap;
    const double beta = cfg.beta_in_mod;
    const double q = 2.0 * cfg.gamma_c * cfg.alpha_in_mod * cfg.alpha_in_mod;
    const double psi = cfg.beta_in_mod == 0.0
                           ? 0.0
                           : 2.0 * cfg.alpha_in_phase - cfg.beta_in_phase;
    const double cp = std::cos(psi), sp = std::sin(psi);
    std::array<double, 6> c{};
    c[5] = (mu * mu + G * G) * (mu * mu + G * G);
    c[4] = 4.0 * (g * mu + d * G) * (mu * mu + G * G);
    c[3] = 4.0 * (g * mu + d * G) * (g * mu + d * G) +
           2.0 * (g * g + d * d - 4.0 * mu * beta * beta) * (mu * mu + G * G);
    c[2] = 4.0 * (g * g + d * d - 4.0 * mu * beta * beta) * (g * mu + d * G) -
           q * (mu * mu + G * G);
    c[1] = (g * g + d * d - 4.0 * mu * beta * beta) *
               (g * g + d * d - 4.0 * mu * beta * beta) -
           q * (2.0 * g * mu + 2.0 * d * G +
                4.0 * std::sqrt(mu) * beta * (mu * cp + G * sp));
    c[0] = -q * (g * g + d * d + 4.0 * mu * beta * beta +
                 4.0 * std::sqrt(mu) * beta * (g * cp + d * sp));
    return c;
}

} // namespace

TEST_CASE("polynomial coefficients match the independent expansion")
{
    for (int trial = 0; trial < 300; ++trial) {
        const CavityConfig cfg = random_config();
        const CouplingFactors cf = coupling::factors_for(cfg);
        const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
        const std::array<double, 6> oracle = expanded_oracle(cfg, cf);
        double scale = 0.0;
        for (double c : oracle)
            scale = std::max(scale, std::abs(c));
        for (int k = 0; k <= 5; ++k)
            CHECK(std::abs(qc.c[static_cast<size_t>(k)] -
                           oracle[static_cast<size_t>(k)]) <= 1e-12 * scale);
    }
}

TEST_CASE("expanded polynomial reproduces the unexpanded form")
{
    for (int trial = 0; trial < 300; ++trial) {
        const CavityConfig cfg = random_config();
        const CouplingFactors cf = coupling::factors_for(cfg);
        const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
        const double n = uniform(0.0, 40.0);
        const double expanded = qc.eval(n);
        const double unexpanded = state_equation_mismatch(cfg, cf, n);
        CHECK(std::abs(expanded - unexpanded) <=
              1e-9 * residual_scale(cfg, cf, n));
    }
}

TEST_CASE("frequency-doubling reduction without harmonic drive")
{
    // beta = 0, delta = 0, Gamma = 0: roots satisfy n (g + mu n)^2 = q
    CavityConfig cfg;
    cfg.gamma_c = 1.0;
    cfg.gamma_s = 0.0;
    cfg.nu = 0.2;
    cfg.dkl = 0.0; // k_i = 0
    cfg.alpha_in_mod = 1.4;
    const CouplingFactors cf = coupling::factors_for(cfg);
    REQUIRE(cf.gamma_cap == 0.0);
    const auto roots = solve_n(cfg, cf);
    REQUIRE(roots.size() == 1);
    const double q = 2.0 * cfg.gamma_c * cfg.alpha_in_mod * cfg.alpha_in_mod;
    const double n = roots[0];
    const double g = cfg.gamma();
    CHECK(n * (g + cf.mu * n) * (g + cf.mu * n) == doctest::Approx(q).epsilon(1e-10));
}

TEST_CASE("undriven cavity has only the trivial fixed point")
{
    CavityConfig cfg;
    cfg.gamma_c = 0.7;
    cfg.gamma_s = 0.2;
    cfg.delta = 1.1;
    cfg.nu = 0.4;
    cfg.dkl = 2.0;
    const CouplingFactors cf = coupling::factors_for(cfg);
    const auto roots = solve_n(cfg, cf);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == 0.0);
}

TEST_CASE("input power inversion round-trips through the root solver")
{
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        CavityConfig cfg = random_config();
        cfg.alpha_in_mod = 0.0;
        const CouplingFactors cf = coupling::factors_for(cfg);
        const double n = uniform(0.01, 30.0);
        const double psi = 2.0 * cfg.alpha_in_phase -
                           (cfg.beta_in_mod > 0.0 ? cfg.beta_in_phase
                                                  : 2.0 * cfg.alpha_in_phase);
        double power = 0.0;
        try {
            power = input_power_for_n(cfg, cf, n, psi);
        } catch (const infeasible_error&) {
            continue; // degenerate drive alignment
        }
        cfg.alpha_in_mod = std::sqrt(power);
        const auto roots = solve_n(cfg, cf);
        REQUIRE(!roots.empty());
        double best = 1e300;
        for (double r : roots)
            best = std::min(best, std::abs(r - n));
        CHECK(best <= 1e-8 * n);
        ++checked;
    }
    CHECK(checked > 250);
}

TEST_CASE("phase-matched doubling at a prescribed normalized photon number")
{
    // gamma = gamma_c = 1, nu chosen so nu * n = 2.5; the inverse map then
    // hands back a drive whose unique fixed point recovers n
    CavityConfig cfg;
    cfg.gamma_c = 1.0;
    cfg.gamma_s = 0.0;
    cfg.nu = 0.05;
    cfg.dkl = 0.0;
    const CouplingFactors cf = coupling::factors_for(cfg);
    const double n = 2.5 / cfg.nu;
    cfg.alpha_in_mod = std::sqrt(input_power_for_n(cfg, cf, n, 0.0));
    const auto roots = solve_n(cfg, cf);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - n) <= 1e-8 * n);
}

TEST_CASE("bistable dispersion branch has three fixed points")
{
    // pure cascading dispersion (k_r = 0 at x = 2 pi), detuning between the
    // turning points
    CavityConfig cfg;
    cfg.gamma_c = 0.6;
    cfg.gamma_s = 0.4;
    cfg.nu = 0.1;
    cfg.dkl = 2.0 * pi;
    cfg.delta = 4.0;
    const CouplingFactors cf = coupling::factors_for(cfg);
    REQUIRE(std::abs(cf.mu) < 1e-30);

    // middle-branch photon number; the matching drive makes it a fixed point
    const double n_mid = 80.0;
    const double power = input_power_for_n(cfg, cf, n_mid, 0.0);
    cfg.alpha_in_mod = std::sqrt(power);

    const auto roots = solve_n(cfg, cf);
    CHECK(roots.size() == 3);

    // brute-force sign-change scan of the polynomial as the oracle
    const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
    int signflips = 0;
    double prev = qc.eval(0.0);
    for (int i = 1; i <= 300000; ++i) {
        const double n = 300.0 * i / 300000.0;
        const double v = qc.eval(n);
        if ((prev < 0.0 && v >= 0.0) || (prev > 0.0 && v <= 0.0))
            ++signflips;
        prev = v;
    }
    CHECK(signflips == 3);
    // Kerr reduction of the inverse map: 2 gc P = n (g^2 + (d + G n)^2)
    const double g = cfg.gamma();
    const double dg = cfg.delta + cf.gamma_cap * n_mid;
    CHECK(2.0 * cfg.gamma_c * power ==
          doctest::Approx(n_mid * (g * g + dg * dg)).epsilon(1e-10));
}

TEST_CASE("input power for the trivial state is zero")
{
    const CavityConfig cfg = random_config();
    const CouplingFactors cf = coupling::factors_for(cfg);
    CHECK(input_power_for_n(cfg, cf, 0.0, 0.3) == 0.0);
}

TEST_CASE("phase recovery on the positive real line")
{
    CavityConfig cfg;
    cfg.gamma_c = 1.0;
    cfg.gamma_s = 0.0;
    cfg.nu = 0.2;
    cfg.dkl = 0.0;
    cfg.alpha_in_mod = 1.5;
    cfg.alpha_in_phase = 0.0;
    const CouplingFactors cf = coupling::factors_for(cfg);
    const auto roots = solve_n(cfg, cf);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(recover_theta(cfg, cf, roots[0])) < 1e-12);
}

TEST_CASE("phase recovery against the pure-dispersion closed form")
{
    CavityConfig cfg;
    cfg.gamma_c = 0.8;
    cfg.gamma_s = 0.3;
    cfg.nu = 0.15;
    cfg.dkl = 2.0 * pi; // mu = 0
    cfg.delta = 0.7;
    cfg.alpha_in_mod = 1.2;
    cfg.alpha_in_phase = 0.9;
    const CouplingFactors cf = coupling::factors_for(cfg);
    const auto roots = solve_n(cfg, cf);
    for (double n : roots) {
        if (n <= 0.0)
            continue;
        const double theta = recover_theta(cfg, cf, n);
        const double expected = wrap_angle(
            cfg.alpha_in_phase -
            std::atan2(cfg.delta + cf.gamma_cap * n, cfg.gamma()));
        CHECK(std::abs(wrap_angle(theta - expected)) < 1e-9);
    }
}

TEST_CASE("recovered fixed points zero the classical vector field")
{
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const CavityConfig cfg = random_config();
        if (cfg.alpha_in_mod == 0.0)
            continue;
        const CouplingFactors cf = coupling::factors_for(cfg);
        std::vector<double> roots;
        try {
            roots = solve_n(cfg, cf);
        } catch (const solve_error&) {
            FAIL("solver failed on a random config");
        }
        for (double n : roots) {
            if (n <= 0.0)
                continue;
            double theta = 0.0;
            try {
                theta = recover_theta(cfg, cf, n);
            } catch (const degenerate_error&) {
                continue;
            }
            const complex alpha = std::polar(std::sqrt(n), theta);
            const complex r = classical_rhs(cfg, cf, alpha);
            const double scale =
                (cfg.gamma() + std::abs(cfg.delta) +
                 (cf.mu + std::abs(cf.gamma_cap)) * n) * std::sqrt(n) +
                std::sqrt(2.0 * cfg.gamma_c) * cfg.alpha_in_mod +
                2.0 * std::sqrt(cf.mu) * cfg.beta_in_mod * std::sqrt(n) + 1.0;
            CHECK(std::abs(r) <= 1e-8 * scale);
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("phase recovery rejects non-fixed-points and degenerate sets")
{
    CavityConfig cfg;
    cfg.gamma_c = 1.0;
    cfg.nu = 0.2;
    cfg.alpha_in_mod = 1.0;
    const CouplingFactors cf = coupling::factors_for(cfg);
    CHECK_THROWS_AS(recover_theta(cfg, cf, 1234.5), std::invalid_argument);
    CHECK_THROWS_AS(recover_theta(cfg, cf, 0.0), std::invalid_argument);

    // a config sitting on the singular set: g^2 + d^2 = 4 mu |beta|^2 at n=0
    CavityConfig sing;
    sing.gamma_c = 1.0;
    sing.gamma_s = 0.0;
    sing.nu = 1.0;
    sing.dkl = 0.0;
    sing.alpha_in_mod = 0.5;
    sing.beta_in_mod = 0.5; // 4 mu beta^2 = 1 = gamma^2 at n -> 0
    const CouplingFactors cfs = coupling::factors_for(sing);
    CHECK_THROWS_AS(recover_theta(sing, cfs, 1e-15), std::runtime_error);
}

TEST_CASE("solver holds up over wide parameter ranges")
{
    auto log_uniform = [&](double lo, double hi) {
        return std::pow(10.0, uniform(std::log10(lo), std::log10(hi)));
    };
    for (int t = 0; t < 3000; ++t) {
        CavityConfig cfg;
        cfg.gamma_c = log_uniform(1e-3, 1e3);
        cfg.gamma_s = (t % 3) ? log_uniform(1e-4, 1e3) : 0.0;
        cfg.delta = (t % 2 ? 1.0 : -1.0) * log_uniform(1e-4, 1e4);
        cfg.nu = log_uniform(1e-5, 1e2);
        cfg.dkl = uniform(-30.0, 30.0);
        cfg.alpha_in_mod = (t % 7) ? log_uniform(1e-3, 1e4) : 0.0;
        cfg.alpha_in_phase = uniform(-pi, pi);
        cfg.beta_in_mod = (t % 5) ? log_uniform(1e-3, 1e3) : 0.0;
        cfg.beta_in_phase = uniform(-pi, pi);
        const CouplingFactors cf = coupling::factors_for(cfg);

        std::vector<double> roots;
        REQUIRE_NOTHROW(roots = solve_n(cfg, cf));

        if (t % 10)
            continue;
        // sign-change scan of the expanded polynomial as a completeness
        // oracle: every crossing must be matched by a found root
        const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
        double nmax = 1.0;
        for (double r : roots)
            nmax = std::max(nmax, r);
        nmax = 3.0 * nmax + 1.0;
        int flips = 0;
        double prev = qc.eval(0.0);
        for (int i = 1; i <= 4000; ++i) {
            const double v = qc.eval(nmax * i / 4000.0);
            if ((prev < 0.0 && v > 0.0) || (prev > 0.0 && v < 0.0))
                ++flips;
            if (v != 0.0)
                prev = v;
        }
        int positive = 0;
        for (double r : roots)
            if (r > 1e-12)
                ++positive;
        CHECK(positive + 1 >= flips);
    }
}

TEST_CASE("root ordering, deduplication, and residuals")
{
    for (int trial = 0; trial < 100; ++trial) {
        const CavityConfig cfg = random_config();
        const CouplingFactors cf = coupling::factors_for(cfg);
        const auto roots = solve_n(cfg, cf);
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
            CHECK(roots[i] < roots[i + 1]);
            CHECK(std::abs(roots[i] - roots[i + 1]) >= 1e-9 * (1.0 + roots[i]));
        }
        CHECK((roots.size() == 1 || roots.size() == 3 || roots.size() == 5 ||
               roots.size() == 2 || roots.size() == 4));
        for (double n : roots)
            CHECK(std::abs(state_equation_mismatch(cfg, cf, n)) <=
                  1e-8 * residual_scale(cfg, cf, n));
    }
}
