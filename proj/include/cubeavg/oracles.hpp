// Exact finite-N and limit formulas for rotation-based cubic averages and
// weighted one-parameter averages.  These are the ground truth the kernel
// and acceptance tests compare against.
#pragma once

#include <optional>

#include "cubeavg/averaging.hpp"

namespace cubeavg {

// E_N(t) = (1/N) sum_{n<N} e(nt), via the closed form
// e((N-1)t/2) sin(pi N t) / (N sin(pi t)) for non-integer t, else 1.
cplx dirichlet_mean(double t, std::size_t N);

// Exact cubic average of a cube of trig polynomials under the rotation by
// alpha, at finite N or in the limit (N = nullopt).  Limit queries reject
// frequency combinations within 1e-6 of a nonzero resonance, where the
// finite-N/limit comparison is meaningless at machine precision.
cplx rotation_cubic_exact(const CubeSpec& cube, const std::vector<double>& alpha,
                          const TorusPoint& x, std::optional<std::size_t> N);

// Product over vertices of the zero-frequency coefficient: the limit of the
// cubic averages when the characteristic factor is trivial.
cplx product_of_integrals(const CubeSpec& cube);

// Exact weighted rotation average (1/N) sum f(x + n alpha) e(n beta) at
// finite N, or its limit (resonant frequencies only survive).
cplx ww_rotation_exact(const TrigPolynomial& f, double alpha, double beta, double x,
                       std::optional<std::size_t> N);

}  // namespace cubeavg
