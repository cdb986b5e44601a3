#include "cavsq/reference_model.hpp"

#include <cmath>
#include <limits>

namespace cavsq::reference_model {

void ChannelSet::validate() const
{
    double sum = 0.0;
    int irreversible = 0;
    for (const Channel& ch : channels) {
        if (!(ch.gamma_tilde >= 0.0 && ch.gamma_tilde <= 1.0))
            throw std::invalid_argument("channel weight outside [0, 1]: " + ch.name);
        sum += ch.gamma_tilde;
        if (ch.irreversible)
            ++irreversible;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("channel weights must sum to 1");
    if (irreversible != 1)
        throw std::invalid_argument("exactly one channel must be irreversible");
}

const Channel& ChannelSet::find(std::string_view name) const
{
    for (const Channel& ch : channels)
        if (ch.name == name)
            return ch;
    throw std::out_of_range("unknown channel: " + std::string(name));
}

ChannelSet standard_channels(const NormalizedParams& np)
{
    ChannelSet cs;
    cs.channels = {
        {"coupling", np.gamma_tilde_c, false},
        {"nonlinear", np.gamma_tilde_nl, false},
        {"scattering", np.gamma_tilde_s, true},
    };
    return cs;
}

RefSpectrum reference_spectrum(double b_tilde_mod, double delta_big,
                               double omega_tilde)
{
    const double b = b_tilde_mod;
    const double d2 = delta_big * delta_big;
    const double w2 = omega_tilde * omega_tilde;
    const double p = 1.0 + w2 + b * b - d2;
    const double root = std::sqrt(p * p + 4.0 * d2);
    const double q = 1.0 - w2 - b * b + d2;
    const double den = q * q + 4.0 * w2;

    RefSpectrum s;
    if (den == 0.0) {
        // only reachable on the instability manifold at omega~ = 0
        s.diverged = true;
        s.s_plus = std::numeric_limits<double>::infinity();
        s.s_minus = (omega_tilde == 0.0) ? -1.0
                                         : std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    // 2b - root via the difference of squares; shares the q factor with den
    // so the near-instability cancellation divides out
    const double qc = q + 2.0 * w2;
    const double n_plus = 2.0 * b + root;
    const double n_minus = -(qc * qc + 4.0 * (b * b - d2) * w2) / n_plus;
    s.s_minus = 4.0 * b * n_minus / den;
    s.s_plus = 4.0 * b * n_plus / den;
    return s;
}

double optimized_noise(double b_tilde_mod)
{
    const double b = b_tilde_mod;
    const double onepb = 1.0 + b;
    return -4.0 * b / (onepb * onepb);
}

double instability_limit_spectrum(double b_tilde_mod, double omega_tilde)
{
    const double b = b_tilde_mod;
    if (omega_tilde == 0.0)
        return -1.0;
    const double w2 = omega_tilde * omega_tilde;
    const double den = w2 * (w2 + 4.0);
    return 4.0 * b * (2.0 * b - std::sqrt(4.0 * b * b + den)) / den;
}

std::optional<double> mus_product(double b_tilde_mod, double delta_big,
                                  double omega_tilde)
{
    const RefSpectrum s = reference_spectrum(b_tilde_mod, delta_big, omega_tilde);
    if (s.diverged)
        return std::nullopt;
    return (1.0 + s.s_minus) * (1.0 + s.s_plus);
}

std::pair<double, double> channel_spectrum(const ChannelSet& channels,
                                           std::string_view name,
                                           const RefSpectrum& s_ref)
{
    const Channel& ch = channels.find(name);
    return {1.0 + ch.gamma_tilde * s_ref.s_minus,
            1.0 + ch.gamma_tilde * s_ref.s_plus};
}

} // namespace cavsq::reference_model
