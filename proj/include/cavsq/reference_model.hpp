#ifndef CAVSQ_REFERENCE_MODEL_HPP
#define CAVSQ_REFERENCE_MODEL_HPP

#include "cavsq/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cavsq::reference_model {

/// Noise input channels of the one-mode reduction; weights sum to 1 with
/// exactly one channel carrying the irreversible losses.
struct Channel {
    std::string name;
    double gamma_tilde = 0.0;
    bool irreversible = false;
};

struct ChannelSet {
    std::vector<Channel> channels;
    void validate() const; // throws std::invalid_argument
    const Channel& find(std::string_view name) const; // throws std::out_of_range
};

/// The three channels of the cavity model: coupling, nonlinear, scattering
/// (scattering irreversible).
ChannelSet standard_channels(const NormalizedParams& np);

/// Normally ordered reference spectra pair.
struct RefSpectrum {
    double s_minus = 0.0;
    double s_plus = 0.0;
    bool diverged = false;
};

/// Normally ordered spectra of the single-channel reference system at
/// (|B~|, Delta, omega~). On the zero of the common denominator the result
/// is tagged diverged (s_plus infinite; s_minus takes the on-manifold
/// zero-frequency limit -1 where that applies).
RefSpectrum reference_spectrum(double b_tilde_mod, double delta_big,
                               double omega_tilde);

/// Zero-frequency, zero-detuning optimum: -4|B~|/(1+|B~|)^2.
double optimized_noise(double b_tilde_mod);

/// Squeezing spectrum on the instability manifold; the removable 0/0 at
/// omega~ = 0 takes its analytic value -1.
double instability_limit_spectrum(double b_tilde_mod, double omega_tilde);

/// Product S_- * S_+ of the full reference spectra; 1 everywhere off the
/// divergences, nullopt on them.
std::optional<double> mus_product(double b_tilde_mod, double delta_big,
                                  double omega_tilde);

/// Full output spectrum of one channel: 1 + gamma_tilde_n * (:S_ref:).
std::pair<double, double> channel_spectrum(const ChannelSet& channels,
                                           std::string_view name,
                                           const RefSpectrum& s_ref);

} // namespace cavsq::reference_model

#endif
