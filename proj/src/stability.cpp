#include "cavsq/stability.hpp"

#include <cmath>

namespace cavsq::stability {

StabilityReport eigenvalues(const CavityConfig& cfg, const CouplingFactors& cf,
                            const steady_state::SteadyState& ss)
{
    const EffectiveGain eg = effective_gain(cfg, cf, ss.n, ss.theta);
    const double g2 = cfg.gamma() + 2.0 * cf.mu * ss.n;
    const double d2 = cfg.delta + 2.0 * cf.gamma_cap * ss.n;
    const complex root = std::sqrt(complex(std::norm(eg.b_raw) - d2 * d2, 0.0));

    StabilityReport r;
    r.lambda_plus = -g2 + root;
    r.lambda_minus = -g2 - root;
    const double max_re = std::max(r.lambda_plus.real(), r.lambda_minus.real());
    r.stable = max_re < 0.0;
    r.margin = -max_re / g2;
    return r;
}

std::optional<std::pair<double, double>> kerr_turning_points(double m, double k_i)
{
    const double disc = m * m * k_i * k_i - 1.0;
    if (disc < 0.0)
        return std::nullopt;
    const double root = std::sqrt(disc);
    return std::make_pair(-2.0 * m * k_i - root, -2.0 * m * k_i + root);
}

std::optional<std::pair<double, double>> shg_instability_detunings(
    double m, const CouplingFactors& cf)
{
    const double disc =
        m * m * (cf.k_i * cf.k_i - 3.0 * cf.k_r * cf.k_r) - 4.0 * cf.k_r * m - 1.0;
    if (disc < 0.0)
        return std::nullopt;
    const double root = std::sqrt(disc);
    return std::make_pair(-2.0 * m * cf.k_i - root, -2.0 * m * cf.k_i + root);
}

std::pair<double, double> driven_instability_eta(double m)
{
    return {-(1.0 + m), 1.0 + 3.0 * m};
}

bool reference_instability_check(double b_tilde_mod, double delta_big, double tol)
{
    const double lhs = 1.0 + delta_big * delta_big;
    const double rhs = b_tilde_mod * b_tilde_mod;
    return std::abs(lhs - rhs) <= tol * std::max(1.0, std::max(lhs, rhs));
}

bool reference_instability_check(complex b_tilde, double delta_big, double tol)
{
    return reference_instability_check(std::abs(b_tilde), delta_big, tol);
}

} // namespace cavsq::stability
