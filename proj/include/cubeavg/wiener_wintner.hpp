// Nilsequence weights and weighted one-parameter averages, with continuity
// diagnostics for the field of limit estimates.
#pragma once

#include <span>
#include <variant>

#include "cubeavg/averaging.hpp"

namespace cubeavg {

// Weight w(n) = g0 evaluated at the reduced n-th power of y0.
struct HeisenbergNilseq {
    NilElement y0;
    Observable g0;  // ThetaObservable or TorusOnHeisenberg
};

// Weight w(n) = e(c0 + c1 n + c2 n^2).
struct PolynomialPhase {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

using WeightSpec = std::variant<HeisenbergNilseq, PolynomialPhase>;

std::vector<cplx> weight_sequence(const WeightSpec& w, std::size_t L);

// (1/N) sum_{n<N} fseq[n] * wseq[n].
cplx ww_average(std::span<const cplx> fseq, std::span<const cplx> wseq, std::size_t N);

struct WWLimitField {
    std::vector<SampleSeries> series;        // one per grid point
    std::vector<cplx> final_estimates;       // largest-N value per point
    std::vector<ModulusPoint> modulus;       // continuity modulus of the estimates
};

// Weighted averages of f0 along the orbit of every grid point, over the
// schedule, plus the continuity modulus of the largest-N estimates.
// Only rotation and Heisenberg systems qualify (unique ergodicity).
WWLimitField ww_limit_field(const SystemDescriptor& system, const Observable& f0,
                            const WeightSpec& weight, const std::vector<PhasePoint>& grid,
                            const std::vector<std::size_t>& schedule, int threads = 1);

}  // namespace cubeavg
