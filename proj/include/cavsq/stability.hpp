#ifndef CAVSQ_STABILITY_HPP
#define CAVSQ_STABILITY_HPP

#include "cavsq/core.hpp"
#include "cavsq/steady_state.hpp"

#include <optional>
#include <utility>

namespace cavsq::stability {

struct StabilityReport {
    complex lambda_plus;
    complex lambda_minus;
    bool stable = false;
    double margin = 0.0; // -max Re(lambda) / gamma_t
};

/// Drift eigenvalues -(gamma + 2 mu n) +- sqrt(|B|^2 - (delta + 2 Gamma n)^2)
/// of the fluctuation dynamics around a fixed point.
StabilityReport eigenvalues(const CavityConfig& cfg, const CouplingFactors& cf,
                            const steady_state::SteadyState& ss);

/// Turning-point detunings of the cascading-induced dispersive bistability
/// (mu = 0 branch, hat units): -2 m k_i +- sqrt(m^2 k_i^2 - 1).
std::optional<std::pair<double, double>> kerr_turning_points(double m, double k_i);

/// Undriven-harmonic instability detunings (hat units):
/// -2 m k_i +- sqrt(m^2 (k_i^2 - 3 k_r^2) - 4 k_r m - 1).
std::optional<std::pair<double, double>> shg_instability_detunings(
    double m, const CouplingFactors& cf);

/// Real harmonic-drive amplitudes on the instability manifold for the
/// phase-matched, zero-detuning branch: (-(1+m), 1+3m).
std::pair<double, double> driven_instability_eta(double m);

/// True when (|b_tilde|, delta_big) sits on the manifold 1 + D^2 = |B|^2.
bool reference_instability_check(double b_tilde_mod, double delta_big,
                                 double tol = 1e-9);
bool reference_instability_check(complex b_tilde, double delta_big,
                                 double tol = 1e-9);

} // namespace cavsq::stability

#endif
