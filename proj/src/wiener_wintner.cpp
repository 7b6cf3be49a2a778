#include "cubeavg/wiener_wintner.hpp"

#include <stdexcept>
#include <string>

#include "cubeavg/parallel.hpp"

namespace cubeavg {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<cplx> weight_sequence(const WeightSpec& w, std::size_t L) {
    require(L >= 1, "weight_sequence: L must be >= 1");
    if (const auto* nil = std::get_if<HeisenbergNilseq>(&w)) {
        require(nil->g0.kind() == Observable::Kind::Theta ||
                    nil->g0.kind() == Observable::Kind::TorusOnNil,
                "weight_sequence: nilsequence observable must live on the nilmanifold");
        // y0^n Gamma is the orbit of the identity coset under left translation
        // by y0; reuse the compensated orbit generator.
        auto system = SystemDescriptor::heisenberg(nil->y0.x, nil->y0.y, nil->y0.z,
                                                   /*declared_irrational=*/false);
        return sample_sequence(system, nil->g0, NilPoint{0.0, 0.0, 0.0}, L);
    }
    const auto& phase = std::get<PolynomialPhase>(w);
    std::vector<cplx> out(L);
    for (std::size_t n = 0; n < L; ++n) {
        double nd = static_cast<double>(n);
        Dd t = dd_add(dd_add(two_prod(phase.c1, nd), two_prod(phase.c2, nd * nd)), phase.c0);
        out[n] = cis(t);
    }
    return out;
}

cplx ww_average(std::span<const cplx> fseq, std::span<const cplx> wseq, std::size_t N) {
    require(N >= 1, "ww_average: N must be >= 1");
    require(fseq.size() >= N && wseq.size() >= N,
            "ww_average: sequences must have length >= N = " + std::to_string(N));
    std::vector<cplx> prods(N);
    for (std::size_t n = 0; n < N; ++n) prods[n] = fseq[n] * wseq[n];
    return pairwise_sum(prods) / static_cast<double>(N);
}

WWLimitField ww_limit_field(const SystemDescriptor& system, const Observable& f0,
                            const WeightSpec& weight, const std::vector<PhasePoint>& grid,
                            const std::vector<std::size_t>& schedule, int threads) {
    require(system.kind == SystemKind::Rotation || system.kind == SystemKind::Heisenberg,
            "ww_limit_field: only rotation and Heisenberg systems satisfy the unique "
            "ergodicity hypotheses");
    require(!grid.empty(), "ww_limit_field: empty grid");
    require(!schedule.empty(), "ww_limit_field: empty schedule");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        require(schedule[k] > schedule[k - 1],
                "ww_limit_field: schedule must be strictly increasing");
    require_valid_for(f0, system, "ww_limit_field");

    const std::size_t L = schedule.back();
    const std::vector<cplx> wseq = weight_sequence(weight, L);

    WWLimitField field;
    field.series.resize(grid.size());
    field.final_estimates.resize(grid.size());

    parallel_for_index(grid.size(), threads, [&](std::size_t i) {
        std::vector<cplx> fseq = sample_sequence(system, f0, grid[i], L);
        SampleSeries s;
        s.entries.reserve(schedule.size());
        for (std::size_t N : schedule) s.entries.push_back({N, ww_average(fseq, wseq, N)});
        field.final_estimates[i] = s.entries.back().value;
        field.series[i] = std::move(s);
    });

    std::vector<std::vector<double>> coords(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) coords[i] = point_coords(grid[i]);
    field.modulus = continuity_modulus(coords, field.final_estimates, threads);
    return field;
}

}  // namespace cubeavg
