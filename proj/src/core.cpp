#include "cavsq/core.hpp"

#include <cmath>
#include <limits>

namespace cavsq {

double wrap_angle(double a)
{
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi)
        r += 2.0 * pi;
    return r;
}

double wrap_quadrature(double a)
{
    double r = std::remainder(a, pi);
    if (r <= -0.5 * pi)
        r += pi;
    return r;
}

double to_db(double s)
{
    if (s < 0.0)
        throw std::domain_error("to_db: negative noise power " + std::to_string(s));
    if (s == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(s);
}

CavityConfig CavityConfig::normalized() const
{
    CavityConfig c = *this;
    c.alpha_in_phase = wrap_angle(c.alpha_in_phase);
    c.beta_in_phase = wrap_angle(c.beta_in_phase);
    return c;
}

void CavityConfig::validate() const
{
    if (!(gamma_c >= 0.0))
        throw std::invalid_argument("gamma_c must be >= 0");
    if (!(gamma_s >= 0.0))
        throw std::invalid_argument("gamma_s must be >= 0");
    if (!(gamma() > 0.0))
        throw std::invalid_argument("gamma_c + gamma_s must be > 0");
    if (!(nu >= 0.0))
        throw std::invalid_argument("nu must be >= 0");
    if (!(alpha_in_mod >= 0.0))
        throw std::invalid_argument("alpha_in_mod must be >= 0");
    if (!(beta_in_mod >= 0.0))
        throw std::invalid_argument("beta_in_mod must be >= 0");
    if (!std::isfinite(dkl) || !std::isfinite(delta))
        throw std::invalid_argument("dkl and delta must be finite");
}

CouplingFactors with_nu(CouplingFactors cf, double nu)
{
    cf.mu = nu * cf.k_r;
    cf.gamma_cap = nu * cf.k_i;
    return cf;
}

NormalizedParams normalize(const CavityConfig& cfg, const CouplingFactors& cf,
                           double n, double theta)
{
    NormalizedParams p;
    const double g = cfg.gamma();
    p.m = cfg.nu * n / g;
    p.eta = cfg.gamma_c / g;
    p.gamma_nl = 2.0 * cf.mu * n;
    p.gamma_t = g + p.gamma_nl;
    p.gamma_tilde_c = cfg.gamma_c / p.gamma_t;
    p.gamma_tilde_s = cfg.gamma_s / p.gamma_t;
    // Complement keeps the fluctuation-dissipation sum at 1 exactly.
    p.gamma_tilde_nl = 1.0 - p.gamma_tilde_c - p.gamma_tilde_s;
    p.eta_in = (2.0 * std::sqrt(cfg.nu) / g) * cfg.beta_in() *
               std::polar(1.0, -2.0 * theta);
    return p;
}

complex b_hat_of(double m, complex eta_in, const CouplingFactors& cf)
{
    return std::sqrt(cf.k_r) * eta_in - complex(cf.k_r, cf.k_i) * m;
}

EffectiveGain effective_gain(const CavityConfig& cfg, const CouplingFactors& cf,
                             double n, double theta)
{
    EffectiveGain eg;
    const complex alpha_sq = std::polar(n, 2.0 * theta);
    eg.b_raw = 2.0 * std::sqrt(cf.mu) * cfg.beta_in() -
               complex(cf.mu, cf.gamma_cap) * alpha_sq;
    const double gamma_t = cfg.gamma() + 2.0 * cf.mu * n;
    eg.b_tilde = eg.b_raw / gamma_t;
    eg.delta_big = (cfg.delta + 2.0 * cf.gamma_cap * n) / gamma_t;
    const NormalizedParams np = normalize(cfg, cf, n, theta);
    eg.b_hat = b_hat_of(np.m, np.eta_in, cf);
    return eg;
}

} // namespace cavsq
