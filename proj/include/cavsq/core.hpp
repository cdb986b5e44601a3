#ifndef CAVSQ_CORE_HPP
#define CAVSQ_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace cavsq {

inline constexpr double pi = 3.14159265358979323846;

using complex = std::complex<double>;

/// Reduce an angle to (-pi, pi].
double wrap_angle(double a);

/// Reduce a quadrature phase to (-pi/2, pi/2] (quadratures repeat mod pi).
double wrap_quadrature(double a);

/// Linear noise power -> dB relative to vacuum. s == 0 returns -infinity
/// (perfect squeezing sentinel); s < 0 throws.
double to_db(double s);

// Typed errors shared across modules.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct solve_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All cavity rates and drives. Rates may be physical (s^-1) or scaled so
/// gamma = 1; nothing below assumes either convention.
struct CavityConfig {
    double gamma_c = 0.0;        // output-coupling decay rate
    double gamma_s = 0.0;        // scattering/absorption decay rate
    double delta = 0.0;          // fundamental-mode detuning
    double nu = 0.0;             // second-order nonlinear strength per photon
    double dkl = 0.0;            // dimensionless mismatch x = dk * Lm
    double alpha_in_mod = 0.0;   // fundamental drive modulus
    double alpha_in_phase = 0.0; // fundamental drive phase (rad)
    double beta_in_mod = 0.0;    // harmonic drive modulus
    double beta_in_phase = 0.0;  // harmonic drive phase (rad)

    double gamma() const { return gamma_c + gamma_s; }
    complex alpha_in() const { return std::polar(alpha_in_mod, alpha_in_phase); }
    complex beta_in() const { return std::polar(beta_in_mod, beta_in_phase); }

    /// Copy with both phases reduced to (-pi, pi].
    CavityConfig normalized() const;

    /// Throws std::invalid_argument when rates/moduli are out of range.
    void validate() const;
};

/// Mismatch-dependent coupling pair and, once a nonlinear strength is known,
/// the induced absorption/dispersion rates mu = nu*k_r, gamma_cap = nu*k_i.
struct CouplingFactors {
    double k_r = 1.0;
    double k_i = 0.0;
    double mu = 0.0;
    double gamma_cap = 0.0;
};

/// The complex parametric coefficient in its three unit systems plus the
/// generalized detuning.
struct EffectiveGain {
    complex b_raw;        // rate units
    complex b_tilde;      // divided by the total decay gamma_t
    complex b_hat;        // hat units, from (m, eta_in)
    double delta_big = 0; // (delta + 2*gamma_cap*n) / gamma_t
};

/// Derived dimensionless parameters of a fixed point.
struct NormalizedParams {
    double m = 0.0;       // nu * n / gamma
    complex eta_in;       // (2 sqrt(nu)/gamma) * beta_in * e^{-2 i theta}
    double eta = 0.0;     // escape efficiency gamma_c / gamma
    double gamma_nl = 0.0;
    double gamma_t = 0.0;
    double gamma_tilde_c = 0.0;
    double gamma_tilde_nl = 0.0;
    double gamma_tilde_s = 0.0;
};

/// Fill mu/gamma_cap of a coupling pair from the nonlinear strength.
CouplingFactors with_nu(CouplingFactors cf, double nu);

/// Normalized parameters at photon number n and intracavity phase theta.
/// The three tilde rates sum to 1 exactly.
NormalizedParams normalize(const CavityConfig& cfg, const CouplingFactors& cf,
                           double n, double theta);

/// Effective gain at a fixed point (n, theta).
EffectiveGain effective_gain(const CavityConfig& cfg, const CouplingFactors& cf,
                             double n, double theta);

/// Hat-unit gain: sqrt(k_r)*eta_in - (k_r + i k_i)*m.
complex b_hat_of(double m, complex eta_in, const CouplingFactors& cf);

} // namespace cavsq

#endif
