#ifndef CAVSQ_POLYROOTS_HPP
#define CAVSQ_POLYROOTS_HPP

#include "cavsq/core.hpp"

#include <span>
#include <vector>

namespace cavsq {

/// All complex roots of a real-coefficient polynomial sum_k c[k] x^k.
/// Near-zero leading coefficients are stripped (degree reduction). Uses the
/// companion matrix of the monic, variable-scaled polynomial and a shifted
/// Hessenberg QR iteration. Throws solve_error on non-convergence.
std::vector<complex> poly_roots(std::span<const double> coeffs);

} // namespace cavsq

#endif
