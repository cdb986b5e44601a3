#ifndef CAVSQ_COUPLING_HPP
#define CAVSQ_COUPLING_HPP

#include "cavsq/core.hpp"

namespace cavsq::coupling {

/// Coupling pair at mismatch x = dk*Lm for the plane-wave geometry:
///   k_r = sinc^2(x/2),  k_i = (2/x)[sinc(x/2) cos(x/2) - 1],
/// with the removable singularity at x = 0 handled by series.
/// mu/gamma_cap are left at 0; use with_nu() or the nu overload.
CouplingFactors factors(double dkl);

/// Same, with mu = nu*k_r and gamma_cap = nu*k_i filled in.
CouplingFactors factors(double dkl, double nu);

CouplingFactors factors_for(const CavityConfig& cfg);

/// k_i^2 - 3 k_r^2; positive sign admits the undriven harmonic-mode
/// instability window.
double ki2_minus_3kr2(double dkl);

} // namespace cavsq::coupling

#endif
