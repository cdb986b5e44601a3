#include "cavsq/coupling.hpp"

#include <cmath>

namespace cavsq::coupling {

namespace {

// Below this the direct form of k_i loses digits to the cancellation in
// (sinc - 1)/x; the truncated series is accurate to ~1e-11 relative at the
// threshold and the direct form to ~7e-12, so both stay inside the 1e-10
// contract across the crossover.
constexpr double series_threshold = 1e-2;

double sinc(double u)
{
    if (std::abs(u) < series_threshold)
        return 1.0 - u * u / 6.0 * (1.0 - u * u / 20.0);
    return std::sin(u) / u;
}

} // namespace

CouplingFactors factors(double dkl)
{
    CouplingFactors cf;
    const double x = dkl;
    if (std::abs(x) < series_threshold) {
        // sinc^2(x/2) = 1 - x^2/12 + x^4/360 + O(x^6)
        cf.k_r = 1.0 - x * x / 12.0 + x * x * x * x / 360.0;
        // (2/x)(sinc(x) - 1) = -x/3 + x^3/60 + O(x^5)
        cf.k_i = -x / 3.0 + x * x * x / 60.0;
        return cf;
    }
    const double s = sinc(0.5 * x);
    cf.k_r = s * s;
    // sinc(x/2) cos(x/2) = sinc(x)
    cf.k_i = 2.0 / x * (sinc(x) - 1.0);
    return cf;
}

CouplingFactors factors(double dkl, double nu)
{
    return with_nu(factors(dkl), nu);
}

CouplingFactors factors_for(const CavityConfig& cfg)
{
    return factors(cfg.dkl, cfg.nu);
}

double ki2_minus_3kr2(double dkl)
{
    const CouplingFactors cf = factors(dkl);
    return cf.k_i * cf.k_i - 3.0 * cf.k_r * cf.k_r;
}

} // namespace cavsq::coupling
