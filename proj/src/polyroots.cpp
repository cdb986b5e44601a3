#include "cavsq/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace cavsq {

namespace {

struct Givens {
    double c;  // real cosine
    complex s; // complex sine
};

Givens make_givens(complex a, complex b)
{
    Givens g{1.0, 0.0};
    const double ab = std::abs(b);
    if (ab == 0.0)
        return g;
    const double aa = std::abs(a);
    const double d = std::hypot(aa, ab);
    if (aa == 0.0) {
        g.c = 0.0;
        g.s = std::conj(b) / ab;
    } else {
        g.c = aa / d;
        g.s = (a / aa) * std::conj(b) / d;
    }
    return g;
}

// Eigenvalues of a small complex upper Hessenberg matrix by explicit
// single-shift (Wilkinson) QR with Givens rotations.
std::vector<complex> hessenberg_eigenvalues(std::vector<complex> h, int n)
{
    auto at = [&](int i, int j) -> complex& { return h[static_cast<size_t>(i) * n + j]; };
    std::vector<complex> eig(n);
    int m = n - 1;
    int iter = 0;
    const int max_iter = 100 * n;
    while (m >= 0) {
        if (m == 0) {
            eig[0] = at(0, 0);
            break;
        }
        // deflate converged trailing eigenvalue
        const double off = std::abs(at(m, m - 1));
        if (off <= 1e-15 * (std::abs(at(m - 1, m - 1)) + std::abs(at(m, m)))) {
            eig[m] = at(m, m);
            --m;
            iter = 0;
            continue;
        }
        if (++iter > max_iter)
            throw solve_error("polynomial eigenvalue iteration did not converge");
        // active window [l, m]
        int l = m;
        while (l > 0) {
            const double sub = std::abs(at(l, l - 1));
            if (sub <= 1e-15 * (std::abs(at(l - 1, l - 1)) + std::abs(at(l, l))))
                break;
            --l;
        }
        // Wilkinson shift from the trailing 2x2 of the window
        const complex a11 = at(m - 1, m - 1), a12 = at(m - 1, m);
        const complex a21 = at(m, m - 1), a22 = at(m, m);
        const complex tr = a11 + a22;
        const complex det = a11 * a22 - a12 * a21;
        const complex disc = std::sqrt(tr * tr - 4.0 * det);
        const complex r1 = 0.5 * (tr + disc);
        const complex r2 = 0.5 * (tr - disc);
        complex shift = (std::abs(r1 - a22) < std::abs(r2 - a22)) ? r1 : r2;
        // occasional exceptional shift to break symmetry stalls
        if (iter % 25 == 0)
            shift += complex(std::abs(at(m, m - 1)), 0.0);

        for (int i = l; i <= m; ++i)
            at(i, i) -= shift;
        // QR by Givens on the window, then RQ
        std::vector<Givens> rot(static_cast<size_t>(m - l));
        for (int k = l; k < m; ++k) {
            const Givens g = make_givens(at(k, k), at(k + 1, k));
            rot[static_cast<size_t>(k - l)] = g;
            for (int j = k; j <= m; ++j) {
                const complex u = at(k, j), v = at(k + 1, j);
                at(k, j) = g.c * u + g.s * v;
                at(k + 1, j) = -std::conj(g.s) * u + g.c * v;
            }
        }
        for (int k = l; k < m; ++k) {
            const Givens g = rot[static_cast<size_t>(k - l)];
            for (int i = l; i <= k + 1; ++i) {
                const complex u = at(i, k), v = at(i, k + 1);
                at(i, k) = g.c * u + std::conj(g.s) * v;
                at(i, k + 1) = -g.s * u + g.c * v;
            }
        }
        for (int i = l; i <= m; ++i)
            at(i, i) += shift;
    }
    return eig;
}

} // namespace

std::vector<complex> poly_roots(std::span<const double> coeffs)
{
    // strip vanished leading coefficients only; a small-but-finite leading
    // term can still dominate at the root scale, and the variable scaling
    // below absorbs it
    double maxc = 0.0;
    for (double c : coeffs)
        maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0)
        throw solve_error("poly_roots: zero polynomial");
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[static_cast<size_t>(deg)]) <= 1e-250 * maxc)
        --deg;
    if (deg == 0)
        return {};

    // monic coefficients a[k], k = 0..deg-1 (a[deg] = 1 implicit)
    const double lead = coeffs[static_cast<size_t>(deg)];
    std::vector<double> a(static_cast<size_t>(deg));
    for (int k = 0; k < deg; ++k)
        a[static_cast<size_t>(k)] = coeffs[static_cast<size_t>(k)] / lead;

    if (deg == 1)
        return {complex(-a[0], 0.0)};
    if (deg == 2) {
        const complex disc = std::sqrt(complex(a[1] * a[1] - 4.0 * a[0], 0.0));
        // stable quadratic: avoid cancellation in the smaller root
        const complex q = -0.5 * (complex(a[1], 0.0) + (a[1] >= 0.0 ? disc : -disc));
        complex r1 = q;
        complex r2 = (std::abs(q) > 0.0) ? complex(a[0], 0.0) / q : -q - complex(a[1], 0.0);
        return {r1, r2};
    }

    // variable scaling keeps companion entries O(1)
    double scale = 0.0;
    for (int k = 0; k < deg; ++k) {
        const double m = std::abs(a[static_cast<size_t>(k)]);
        if (m > 0.0)
            scale = std::max(scale, std::pow(m, 1.0 / (deg - k)));
    }
    if (scale == 0.0)
        return std::vector<complex>(static_cast<size_t>(deg), complex(0.0, 0.0));

    std::vector<double> b(static_cast<size_t>(deg));
    double spow = scale; // scale^(deg-k)
    for (int k = deg - 1; k >= 0; --k) {
        b[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] / spow;
        spow *= scale;
    }

    // companion matrix of y^deg + sum b[k] y^k (upper Hessenberg)
    std::vector<complex> h(static_cast<size_t>(deg) * deg, complex(0.0, 0.0));
    for (int i = 0; i < deg; ++i)
        h[static_cast<size_t>(i) * deg + (deg - 1)] = complex(-b[static_cast<size_t>(i)], 0.0);
    for (int i = 1; i < deg; ++i)
        h[static_cast<size_t>(i) * deg + (i - 1)] = complex(1.0, 0.0);

    std::vector<complex> roots = hessenberg_eigenvalues(std::move(h), deg);
    for (complex& r : roots)
        r *= scale;
    return roots;
}

} // namespace cavsq
