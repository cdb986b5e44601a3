#ifndef CAVSQ_PATHS_HPP
#define CAVSQ_PATHS_HPP

#include "cavsq/core.hpp"
#include "cavsq/spectra.hpp"

#include <span>
#include <vector>

namespace cavsq::paths {

/// One point of a parameter-space trajectory, always at zero analysis
/// frequency. Unstable or infeasible points are emitted flagged, never
/// dropped, so curves stay plottable across divergences.
struct PathSample {
    double m = 0.0;
    double x = 0.0;         // mismatch dkl
    double delta_hat = 0.0;
    double eta_in = 0.0;    // real harmonic drive (driven branches)
    double s_minus = 1.0;
    double s_plus = 1.0;
    double s_m = 1.0;       // static harmonic bound at this point
    double power = 0.0;     // relative harmonic output power
    bool stable = true;
    bool feasible = true;
    bool diverged = false;
    bool converged = true;  // minimizer status (optimum scans)
};

/// Fundamental-mode optimum path on the pure-dispersion branch (x = 2 pi):
/// raise m at delta_hat = 2m/pi, zero frequency. Squeezing floors at 1-eta.
std::vector<PathSample> kerr_fundamental_path(double eta, double m_max,
                                              int samples);

struct DetuningCurve {
    double delta_hat = 0.0; // ignored for the optimum curve
    bool optimum = false;
    std::vector<PathSample> samples;
};

/// The optimum path compared against fixed-detuning paths (same branch).
std::vector<DetuningCurve> kerr_fixed_detuning_curves(
    double eta, std::span<const double> delta_hats, double m_max, int samples);

/// Fundamental squeezing vs mismatch at small m, detuning re-optimized at
/// each x.
std::vector<PathSample> low_gamma_nl_mismatch_scan(double m_small, double eta,
                                                   double x_min, double x_max,
                                                   int samples);

/// Harmonic-mode near-optimum path vs mismatch for the undriven case:
/// detuning rides just above the instability edge (offset eps).
std::vector<PathSample> shg_harmonic_mismatch_path(double m, double x_min,
                                                   double x_max, int samples,
                                                   double eps = 1e-6);

struct OptimumVsM {
    std::vector<PathSample> optimized;     // min over x and delta_hat
    std::vector<PathSample> phase_matched; // x = 0, delta_hat = 0 comparison
};

/// Undriven harmonic optimum vs m: nested scan over mismatch and detuning
/// with golden-section refinement, stability enforced.
OptimumVsM shg_harmonic_optimum_vs_m(std::span<const double> m_grid);

/// Driven harmonic path vs real eta_in at phase matching and zero detuning;
/// symmetric about eta_in = m.
std::vector<PathSample> driven_harmonic_path(double m, double eta_min,
                                             double eta_max, int samples);

struct DistanceCurve {
    double fraction = 0.0; // eta_in = -fraction * (1 + m)
    std::vector<PathSample> samples;
};

/// Harmonic noise and output power vs m at fixed fractions of the
/// negative-branch instability drive.
std::vector<DistanceCurve> driven_distance_scan(std::span<const double> m_grid,
                                                std::span<const double> fractions);

/// Concrete cavity realizing a hat-space sample (gamma = 1, intracavity
/// phase 0); used to verify that emitted samples are feasible fixed points.
struct Realization {
    CavityConfig cfg;
    CouplingFactors cf;
    steady_state::SteadyState ss;
    bool feasible = false;
    bool stable = false;
};

Realization realize(double m, double x, double delta_hat, double eta_in,
                    double eta);

} // namespace cavsq::paths

#endif
