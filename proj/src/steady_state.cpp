#include "cavsq/steady_state.hpp"

#include "cavsq/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavsq::steady_state {

namespace {

// Shared pieces of the state equation:
//   A(n) = (g + mu n)^2 + (d + G n)^2 - 4 mu |beta|^2
//   C(n) = (g + mu n)^2 + (d + G n)^2 + 4 mu |beta|^2
//          + 4 sqrt(mu) |beta| [(g + mu n) cos(psi) + (d + G n) sin(psi)]
// with psi = 2 phi - varphi. Fixed points satisfy
//   n A(n)^2 = 2 gamma_c |alpha_in|^2 C(n).
struct Pieces {
    double g, d, mu, G, b2, s, q, cpsi, spsi;

    double A(double n) const
    {
        const double gm = g + mu * n, dg = d + G * n;
        return gm * gm + dg * dg - b2;
    }
    double dA(double n) const
    {
        return 2.0 * mu * (g + mu * n) + 2.0 * G * (d + G * n);
    }
    double C(double n) const
    {
        const double gm = g + mu * n, dg = d + G * n;
        return gm * gm + dg * dg + b2 + s * (gm * cpsi + dg * spsi);
    }
    double dC(double n) const
    {
        return dA(n) + s * (mu * cpsi + G * spsi);
    }
    double f(double n) const { return n * A(n) * A(n) - q * C(n); }
    double df(double n) const
    {
        const double a = A(n);
        return a * a + 2.0 * n * a * dA(n) - q * dC(n);
    }
};

Pieces pieces(const CavityConfig& cfg, const CouplingFactors& cf, double psi)
{
    Pieces p{};
    p.g = cfg.gamma();
    p.d = cfg.delta;
    p.mu = cf.mu;
    p.G = cf.gamma_cap;
    p.b2 = 4.0 * cf.mu * cfg.beta_in_mod * cfg.beta_in_mod;
    p.s = 4.0 * std::sqrt(cf.mu) * cfg.beta_in_mod;
    p.q = 2.0 * cfg.gamma_c * cfg.alpha_in_mod * cfg.alpha_in_mod;
    p.cpsi = std::cos(psi);
    p.spsi = std::sin(psi);
    return p;
}

// With no harmonic drive the drive phase drops out of the state equation;
// default varphi := 2 phi keeps the phase combinations well defined.
double drive_psi(const CavityConfig& cfg)
{
    if (cfg.beta_in_mod == 0.0)
        return 0.0;
    return 2.0 * cfg.alpha_in_phase - cfg.beta_in_phase;
}

} // namespace

double QuinticCoefficients::eval(double n) const
{
    double r = 0.0;
    for (int k = 5; k >= 0; --k)
        r = r * n + c[static_cast<size_t>(k)];
    return r;
}

QuinticCoefficients quintic_coefficients(const CavityConfig& cfg,
                                         const CouplingFactors& cf)
{
    const Pieces p = pieces(cfg, cf, drive_psi(cfg));
    const double a0 = p.g * p.g + p.d * p.d - p.b2;
    const double a1 = 2.0 * (p.g * p.mu + p.d * p.G);
    const double a2 = p.mu * p.mu + p.G * p.G;
    const double c0 = p.g * p.g + p.d * p.d + p.b2 + p.s * (p.g * p.cpsi + p.d * p.spsi);
    const double c1 = a1 + p.s * (p.mu * p.cpsi + p.G * p.spsi);
    const double c2 = a2;

    QuinticCoefficients qc;
    qc.c[0] = -p.q * c0;
    qc.c[1] = a0 * a0 - p.q * c1;
    qc.c[2] = 2.0 * a0 * a1 - p.q * c2;
    qc.c[3] = a1 * a1 + 2.0 * a0 * a2;
    qc.c[4] = 2.0 * a1 * a2;
    qc.c[5] = a2 * a2;
    return qc;
}

double state_equation_mismatch(const CavityConfig& cfg, const CouplingFactors& cf,
                               double n)
{
    return pieces(cfg, cf, drive_psi(cfg)).f(n);
}

double residual_scale(const CavityConfig& cfg, const CouplingFactors& cf, double n)
{
    const Pieces p = pieces(cfg, cf, drive_psi(cfg));
    const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
    double s = std::abs(n * p.A(n) * p.A(n)) + std::abs(p.q * p.C(n));
    double npow = 1.0;
    for (int k = 0; k <= 5; ++k) {
        s += std::abs(qc.c[static_cast<size_t>(k)]) * npow;
        npow *= std::abs(n);
    }
    return s + 1e-300;
}

std::vector<double> solve_n(const CavityConfig& cfg, const CouplingFactors& cf)
{
    const QuinticCoefficients qc = quintic_coefficients(cfg, cf);
    const Pieces p = pieces(cfg, cf, drive_psi(cfg));

    std::vector<complex> croots;
    try {
        croots = poly_roots(qc.c);
    } catch (const solve_error&) {
        std::ostringstream os;
        os << "fixed-point polynomial root finding failed; coefficients:";
        for (double c : qc.c)
            os << ' ' << c;
        throw solve_error(os.str());
    }

    // root magnitude scale for the negative-clamp tolerance
    double nscale = 1.0;
    for (const complex& r : croots)
        nscale = std::max(nscale, std::abs(r));

    auto residual_ok = [&](double n) {
        return std::abs(p.f(n)) <= 1e-8 * residual_scale(cfg, cf, n);
    };
    auto newton = [&](double n) {
        for (int it = 0; it < 60; ++it) {
            const double fv = p.f(n);
            const double dv = p.df(n);
            if (dv == 0.0)
                break;
            double step = fv / dv;
            const double cap = 0.5 * (1.0 + std::abs(n));
            step = std::clamp(step, -cap, cap);
            n -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(n)))
                break;
        }
        return n;
    };
    // when Newton stalls (nearly multiple roots, poor starting estimate),
    // bracket a sign change around the estimate and bisect
    auto bisect_rescue = [&](double n0) {
        const double lo0 = std::max(0.0, 0.25 * n0), hi0 = 4.0 * n0 + 1.0;
        double prev_x = lo0, prev_f = p.f(lo0);
        for (int i = 1; i <= 64; ++i) {
            const double x = lo0 + (hi0 - lo0) * i / 64.0;
            const double fx = p.f(x);
            if ((prev_f < 0.0 && fx >= 0.0) || (prev_f > 0.0 && fx <= 0.0)) {
                double a = prev_x, b = x, fa = prev_f;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (a + b);
                    const double fm = p.f(mid);
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                    if (b - a <= 1e-16 * (1.0 + std::abs(a)))
                        break;
                }
                return newton(0.5 * (a + b));
            }
            prev_x = x;
            prev_f = fx;
        }
        return n0;
    };

    std::vector<double> roots;
    for (const complex& r : croots) {
        const bool tight = std::abs(r.imag()) < 1e-7 * (1.0 + std::abs(r.real()));
        // looser candidates are kept only if they polish onto a real root
        if (!tight && std::abs(r.imag()) >= 1e-3 * (1.0 + std::abs(r.real())))
            continue;
        double n = newton(r.real());
        if (n < -1e-9 * nscale)
            continue; // negative fixed points are not admissible
        if (std::abs(n) <= 1e-12 * nscale && residual_ok(0.0)) {
            // dust around a root at the origin (Newton converges only
            // linearly onto multiple roots there)
            n = 0.0;
        } else if (n < 0.0) {
            // a clamped root is admissible only when 0 itself solves the
            // equation; otherwise it was a true (tiny) negative root
            if (!residual_ok(0.0))
                continue;
            n = 0.0;
        }
        if (!residual_ok(n))
            n = bisect_rescue(n);
        if (n < -1e-9 * nscale)
            continue;
        n = std::max(n, 0.0);
        if (!residual_ok(n)) {
            if (!tight)
                continue;
            std::ostringstream os;
            os << "fixed-point root n=" << n << " residual " << std::abs(p.f(n))
               << " out of tolerance; coefficients:";
            for (double c : qc.c)
                os << ' ' << c;
            throw solve_error(os.str());
        }
        roots.push_back(n);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double n : roots) {
        if (!out.empty() && std::abs(n - out.back()) < 1e-9 * (1.0 + out.back()))
            continue;
        out.push_back(n);
    }

    if (out.empty() && cfg.alpha_in_mod > 0.0) {
        std::ostringstream os;
        os << "no admissible fixed point found with nonzero drive; coefficients:";
        for (double c : qc.c)
            os << ' ' << c;
        throw solve_error(os.str());
    }
    return out;
}

double input_power_for_n(const CavityConfig& cfg, const CouplingFactors& cf,
                         double n, double psi)
{
    if (n == 0.0)
        return 0.0;
    const Pieces p = pieces(cfg, cf, psi);
    const double a = p.A(n);
    const double num = n * a * a;
    const double den = 2.0 * cfg.gamma_c * p.C(n);
    const double gm = p.g + p.mu * n, dg = p.d + p.G * n;
    const double cscale = gm * gm + dg * dg + p.b2 + 1e-300;
    if (den <= 1e-14 * cfg.gamma_c * cscale) {
        if (num == 0.0)
            return 0.0;
        throw infeasible_error(
            "no finite input power realizes this photon number at the given "
            "relative drive phase; flipping the sign of both the detuning and "
            "the cascaded dispersion restores feasibility");
    }
    return num / den;
}

complex classical_rhs(const CavityConfig& cfg, const CouplingFactors& cf,
                      complex alpha)
{
    const double n = std::norm(alpha);
    return -(complex(cfg.gamma(), cfg.delta) + complex(cf.mu, cf.gamma_cap) * n) * alpha +
           2.0 * std::sqrt(cf.mu) * std::conj(alpha) * cfg.beta_in() +
           std::sqrt(2.0 * cfg.gamma_c) * cfg.alpha_in();
}

double recover_theta(const CavityConfig& cfg, const CouplingFactors& cf, double n)
{
    if (!(n > 0.0))
        throw std::invalid_argument("recover_theta: n must be > 0");
    const double varphi = cfg.beta_in_mod == 0.0 ? 2.0 * cfg.alpha_in_phase
                                                 : cfg.beta_in_phase;
    const double rel = cfg.alpha_in_phase - 0.5 * varphi;
    const double g = cfg.gamma(), gm = g + cf.mu * n, dg = cfg.delta + cf.gamma_cap * n;
    const double b = 2.0 * std::sqrt(cf.mu) * cfg.beta_in_mod;
    const double denom = gm * gm + dg * dg - b * b;
    const double dscale = gm * gm + dg * dg + b * b + 1e-300;
    if (std::abs(denom) <= 1e-12 * dscale)
        throw degenerate_error(
            "fixed point sits on the singular set of the phase equations");
    const double pref = cfg.alpha_in_mod / std::sqrt(n) * std::sqrt(2.0 * cfg.gamma_c);
    const double cr = std::cos(rel), sr = std::sin(rel);
    const double cosv = pref * ((gm + b) * cr + dg * sr) / denom;
    const double sinv = pref * ((gm - b) * sr - dg * cr) / denom;
    const double norm = cosv * cosv + sinv * sinv;
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument(
            "recover_theta: n is not a fixed point of the state equation");
    return wrap_angle(0.5 * varphi + std::atan2(sinv, cosv));
}

SteadyState make_steady_state(const CavityConfig& cfg, const CouplingFactors& cf,
                              double n)
{
    SteadyState ss;
    ss.n = n;
    ss.theta = n > 0.0 ? recover_theta(cfg, cf, n) : 0.0;
    ss.alpha = std::polar(std::sqrt(std::max(n, 0.0)), ss.theta);
    ss.residual = std::abs(state_equation_mismatch(cfg, cf, n)) /
                  residual_scale(cfg, cf, n);
    return ss;
}

std::vector<SteadyState> steady_states(const CavityConfig& cfg,
                                       const CouplingFactors& cf)
{
    std::vector<SteadyState> out;
    for (double n : solve_n(cfg, cf))
        out.push_back(make_steady_state(cfg, cf, n));
    return out;
}

} // namespace cavsq::steady_state
