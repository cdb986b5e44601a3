#ifndef CAVSQ_SPECTRA_HPP
#define CAVSQ_SPECTRA_HPP

#include "cavsq/core.hpp"
#include "cavsq/steady_state.hpp"

#include <utility>
#include <vector>

namespace cavsq::spectra {

enum class Normalization { raw, hat, tilde };
enum class Mode { fundamental, harmonic };

struct SpectrumResult {
    Normalization normalization = Normalization::raw;
    Mode mode = Mode::fundamental;
    double omega = 0.0;
    double s_minus = 1.0;
    double s_plus = 1.0;
    double theta_m = 0.0;       // optimal quadrature phase, reduced mod pi
    bool theta_defined = false; // false when the squeezing correlation vanishes
    bool diverged = false;      // on-instability zero-frequency divergence
    bool unstable = false;      // computed around an unstable fixed point
};

/// Output squeezing/stretching spectra of both modes at analysis frequency
/// omega around a fixed point, in the raw rate units of cfg. Unstable fixed
/// points are computed anyway and flagged.
std::pair<SpectrumResult, SpectrumResult> raw_spectra(
    const CavityConfig& cfg, const CouplingFactors& cf,
    const steady_state::SteadyState& ss, double omega);

/// Same spectra in hat units (rates over gamma, photon number as m,
/// harmonic drive as eta_in, frequency as omega_hat). Phases are reported
/// in the frame where the intracavity phase is zero.
std::pair<SpectrumResult, SpectrumResult> hat_spectra(
    double m, complex eta_in, double delta_hat, const CouplingFactors& cf,
    double gamma_hat_c, double omega_hat);

/// Channel-decomposed tilde form: 1 + gamma_tilde_n * (:S_ref:) with the
/// coupling channel feeding the fundamental and the nonlinear channel the
/// harmonic output.
std::pair<SpectrumResult, SpectrumResult> tilde_spectra(
    const NormalizedParams& np, const EffectiveGain& eg, double omega_tilde);

struct SqueezingPhases {
    bool defined = false;
    double fundamental = 0.0;
    double harmonic = 0.0;
};

/// Optimal quadrature phases of both output modes from the phase of the
/// squeezing correlations; undefined when the parametric coefficient is 0.
SqueezingPhases squeezing_phase(const CavityConfig& cfg, const CouplingFactors& cf,
                                const steady_state::SteadyState& ss, double omega);

/// Static harmonic squeezing bound 1/(1 + 2 m k_r).
double s_m_bound(double m, double k_r);

/// Beam-splitter loss model: 1 + T * (:S_in:).
double loss_degraded(double s_in_normal_ordered, double transmissivity);

/// Relative harmonic output power |eta_in - 2m|^2 on the phase-matched
/// driven branch (eta_in = 0 gives the frequency-doubling baseline (2m)^2).
double harmonic_output_power(double m, double eta_in);

/// Log-spaced analysis grid [1e-3, 10]*gamma_t with omega = 0 prepended.
std::vector<double> default_omega_grid(double gamma_t, int points = 61);

} // namespace cavsq::spectra

#endif
