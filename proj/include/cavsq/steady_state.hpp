#ifndef CAVSQ_STEADY_STATE_HPP
#define CAVSQ_STEADY_STATE_HPP

#include "cavsq/core.hpp"

#include <array>
#include <vector>

namespace cavsq::steady_state {

/// A classical fixed point of the mean-field equation.
struct SteadyState {
    double n = 0.0;     // intracavity photon number
    double theta = 0.0; // intracavity phase (rad)
    complex alpha;      // sqrt(n) e^{i theta}
    double residual = 0.0; // relative state-equation residual at n
};

/// Coefficients c[k] of the degree-5 photon-number polynomial, c[k] * n^k.
struct QuinticCoefficients {
    std::array<double, 6> c{};
    double eval(double n) const;
};

QuinticCoefficients quintic_coefficients(const CavityConfig& cfg,
                                         const CouplingFactors& cf);

/// Unexpanded state-equation mismatch n*A(n)^2 - 2 gamma_c |alpha_in|^2 C(n);
/// zero at fixed points. Matches the expanded polynomial analytically.
double state_equation_mismatch(const CavityConfig& cfg, const CouplingFactors& cf,
                               double n);

/// Magnitude scale for relative residual tests at photon number n.
double residual_scale(const CavityConfig& cfg, const CouplingFactors& cf, double n);

/// All admissible photon-number roots, ascending, Newton-polished on the
/// unexpanded form, tiny negatives clamped to zero, near-duplicates merged.
/// Throws solve_error (with the coefficients in the message) if the
/// eigenvalue iteration fails or a root's residual stays out of tolerance.
std::vector<double> solve_n(const CavityConfig& cfg, const CouplingFactors& cf);

/// Fundamental input power |alpha_in|^2 that makes n a fixed point, given
/// the relative drive phase psi = 2*phi - varphi. Throws infeasible_error
/// when no finite input power can do so (degenerate drive alignment);
/// flipping the sign of both delta and the cascaded dispersion moves that
/// singular locus away.
double input_power_for_n(const CavityConfig& cfg, const CouplingFactors& cf,
                         double n, double psi);

/// Intracavity phase of the fixed point with photon number n under cfg's
/// drives. Throws degenerate_error on the singular set of the phase
/// equations, std::invalid_argument when n is not actually a fixed point.
double recover_theta(const CavityConfig& cfg, const CouplingFactors& cf, double n);

/// Right-hand side of the classical evolution equation at amplitude alpha.
complex classical_rhs(const CavityConfig& cfg, const CouplingFactors& cf,
                      complex alpha);

SteadyState make_steady_state(const CavityConfig& cfg, const CouplingFactors& cf,
                              double n);

/// solve_n + phase recovery for every root.
std::vector<SteadyState> steady_states(const CavityConfig& cfg,
                                       const CouplingFactors& cf);

} // namespace cavsq::steady_state

#endif
