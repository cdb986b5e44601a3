#include "cavsq/spectra.hpp"

#include "cavsq/stability.hpp"

#include <cmath>
#include <limits>

namespace cavsq::spectra {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Common machinery for the raw and hat forms. All arguments in one unit
// system: g2 = total linear+nonlinear decay, d2 = generalized detuning,
// b = |parametric coefficient|, w = analysis frequency.
struct Kernel {
    double n_minus, n_plus, den;
    double corr_re, corr_im; // the omega-dependent factor of the correlations
    bool diverged;
};

Kernel kernel(double g2, double d2, double b, double w)
{
    Kernel k{};
    const double g2s = g2 * g2, d2s = d2 * d2, bs = b * b, ws = w * w;
    const double p = g2s - d2s + bs + ws;
    const double root = std::sqrt(p * p + 4.0 * g2s * d2s);
    k.n_plus = 2.0 * b * g2 + root;
    // 2bg - root rewritten via root^2 - (2bg)^2 = (v + 2w^2)^2 + 4(b^2-d^2)w^2
    // with v = g^2 + d^2 - b^2 - w^2; shares v with the denominator, so the
    // near-instability cancellation drops out of the ratio
    const double v = g2s + d2s - bs - ws;
    const double vc = v + 2.0 * ws;
    k.n_minus = -(vc * vc + 4.0 * (bs - d2s) * ws) / k.n_plus;
    k.den = v * v + 4.0 * g2s * ws;
    k.corr_re = ws + bs + g2s - d2s;
    k.corr_im = 2.0 * g2 * d2;
    k.diverged = (k.den == 0.0);
    return k;
}

// Fill a result pair from the kernel given the two mode prefactors
// (4*gamma_c and 8*mu*n in raw units) and the channel weights used for the
// on-divergence squeezing limit.
std::pair<SpectrumResult, SpectrumResult> assemble(
    const Kernel& k, double w, double pref_a, double pref_b,
    double gamma_tilde_c, double gamma_tilde_nl, complex b_coef,
    complex alpha_sq, bool unstable, Normalization tag)
{
    SpectrumResult fund, harm;
    fund.normalization = harm.normalization = tag;
    fund.mode = Mode::fundamental;
    harm.mode = Mode::harmonic;
    fund.omega = harm.omega = w;
    fund.unstable = harm.unstable = unstable;

    const double b = std::abs(b_coef);
    if (k.diverged && b > 0.0) {
        fund.diverged = harm.diverged = true;
        fund.s_plus = harm.s_plus = inf;
        fund.s_minus = 1.0 - gamma_tilde_c;
        harm.s_minus = 1.0 - gamma_tilde_nl;
    } else {
        // shared dynamic response; the two outputs differ only in prefactor
        const double resp_minus = b * k.n_minus / (k.diverged ? 1.0 : k.den);
        const double resp_plus = b * k.n_plus / (k.diverged ? 1.0 : k.den);
        fund.s_minus = 1.0 + pref_a * resp_minus;
        fund.s_plus = 1.0 + pref_a * resp_plus;
        harm.s_minus = 1.0 + pref_b * resp_minus;
        harm.s_plus = 1.0 + pref_b * resp_plus;
    }

    if (b > 0.0) {
        const complex wfac(k.corr_re, k.corr_im);
        fund.theta_defined = harm.theta_defined = true;
        fund.theta_m = wrap_quadrature(0.5 * (std::arg(b_coef * wfac) - pi));
        harm.theta_m = wrap_quadrature(0.5 * (std::arg(alpha_sq * b_coef * wfac) - pi));
    }
    return {fund, harm};
}

} // namespace

std::pair<SpectrumResult, SpectrumResult> raw_spectra(
    const CavityConfig& cfg, const CouplingFactors& cf,
    const steady_state::SteadyState& ss, double omega)
{
    const EffectiveGain eg = effective_gain(cfg, cf, ss.n, ss.theta);
    const NormalizedParams np = normalize(cfg, cf, ss.n, ss.theta);
    const double g2 = np.gamma_t;
    const double d2 = cfg.delta + 2.0 * cf.gamma_cap * ss.n;
    const bool unstable = !stability::eigenvalues(cfg, cf, ss).stable;
    const Kernel k = kernel(g2, d2, std::abs(eg.b_raw), omega);
    return assemble(k, omega, 4.0 * cfg.gamma_c, 8.0 * cf.mu * ss.n,
                    np.gamma_tilde_c, np.gamma_tilde_nl, eg.b_raw,
                    std::polar(ss.n, 2.0 * ss.theta), unstable,
                    Normalization::raw);
}

std::pair<SpectrumResult, SpectrumResult> hat_spectra(
    double m, complex eta_in, double delta_hat, const CouplingFactors& cf,
    double gamma_hat_c, double omega_hat)
{
    const complex bh = b_hat_of(m, eta_in, cf);
    const double g2 = 1.0 + 2.0 * cf.k_r * m;
    const double d2 = delta_hat + 2.0 * cf.k_i * m;
    const bool unstable = std::norm(bh) > g2 * g2 + d2 * d2;
    const Kernel k = kernel(g2, d2, std::abs(bh), omega_hat);
    return assemble(k, omega_hat, 4.0 * gamma_hat_c, 8.0 * cf.k_r * m,
                    gamma_hat_c / g2, 2.0 * cf.k_r * m / g2, bh,
                    complex(m, 0.0), unstable, Normalization::hat);
}

std::pair<SpectrumResult, SpectrumResult> tilde_spectra(
    const NormalizedParams& np, const EffectiveGain& eg, double omega_tilde)
{
    const double b = std::abs(eg.b_tilde);
    const double d = eg.delta_big;
    const bool unstable = b * b > 1.0 + d * d;
    const Kernel k = kernel(1.0, d, b, omega_tilde);
    // phases reported in the rotated frame, where the coefficient carries
    // the phase of b_hat
    const complex b_rot = b == 0.0 ? complex(0.0, 0.0)
                                   : std::polar(b, std::arg(eg.b_hat));
    return assemble(k, omega_tilde, 4.0 * np.gamma_tilde_c,
                    4.0 * np.gamma_tilde_nl, np.gamma_tilde_c,
                    np.gamma_tilde_nl, b_rot, complex(1.0, 0.0),
                    unstable, Normalization::tilde);
}

SqueezingPhases squeezing_phase(const CavityConfig& cfg, const CouplingFactors& cf,
                                const steady_state::SteadyState& ss, double omega)
{
    auto [fund, harm] = raw_spectra(cfg, cf, ss, omega);
    SqueezingPhases p;
    p.defined = fund.theta_defined;
    p.fundamental = fund.theta_m;
    p.harmonic = harm.theta_m;
    return p;
}

double s_m_bound(double m, double k_r)
{
    return 1.0 / (1.0 + 2.0 * m * k_r);
}

double loss_degraded(double s_in_normal_ordered, double transmissivity)
{
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0))
        throw std::invalid_argument("transmissivity must be in [0, 1]");
    if (!(s_in_normal_ordered >= -1.0))
        throw std::invalid_argument("normally ordered input noise must be >= -1");
    return 1.0 + transmissivity * s_in_normal_ordered;
}

double harmonic_output_power(double m, double eta_in)
{
    const double d = eta_in - 2.0 * m;
    return d * d;
}

std::vector<double> default_omega_grid(double gamma_t, int points)
{
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(points) + 1);
    grid.push_back(0.0);
    const double lo = std::log10(1e-3), hi = std::log10(10.0);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid.push_back(gamma_t * std::pow(10.0, lo + (hi - lo) * t));
    }
    return grid;
}

} // namespace cavsq::spectra
