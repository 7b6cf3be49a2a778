// Shared test fixtures: the concrete systems, cubes, and grids used by the
// trend sweeps (pilot) and the acceptance gates.  The two binaries must see
// the same configurations, so everything lives here.
#pragma once

#include <cmath>

#include "cubeavg/oracles.hpp"
#include "cubeavg/wiener_wintner.hpp"

namespace fixtures {

using namespace cubeavg;

inline const double kAlpha = std::sqrt(2.0) - 1.0;
inline const double kBeta = std::sqrt(3.0) - 1.0;
inline const double kTheta = std::sqrt(5.0) - 2.0;
inline const double kEta = std::sqrt(7.0) - 2.0;

inline Observable trig1(std::vector<std::pair<int, cplx>> terms) {
    std::vector<TrigTerm> tt;
    for (auto& [k, c] : terms) tt.push_back({{k}, c});
    return Observable(TrigPolynomial(1, std::move(tt)));
}

inline Observable trig2(std::vector<std::pair<std::pair<int, int>, cplx>> terms) {
    std::vector<TrigTerm> tt;
    for (auto& [k, c] : terms) tt.push_back({{k.first, k.second}, c});
    return Observable(TrigPolynomial(2, std::move(tt)));
}

inline Observable lift2(std::vector<std::pair<std::pair<int, int>, cplx>> terms) {
    std::vector<TrigTerm> tt;
    for (auto& [k, c] : terms) tt.push_back({{k.first, k.second}, c});
    return Observable(TorusOnHeisenberg{TrigPolynomial(2, std::move(tt))});
}

inline std::vector<std::size_t> default_schedule() {
    std::vector<std::size_t> s;
    for (int k = 5; k <= 12; ++k) s.push_back(std::size_t{1} << k);
    return s;
}

// ---- skew product, order-2 cube with genuine fiber dependence ----
// conditional expectations onto the base rotation: e(x), e(x), e(-x),
// whose factor dual series is exactly e(x0) at every N.

inline SystemDescriptor skew_system() { return SystemDescriptor::skew_product(kAlpha); }

inline TorusPoint skew_start() { return TorusPoint{{0.2, 0.7}}; }

inline CubeSpec skew_cube() {
    return CubeSpec(2, {trig2({{{1, 0}, {1, 0}}, {{0, 1}, {0.5, 0}}}),
                        trig2({{{1, 0}, {1, 0}}, {{1, 1}, {0.5, 0}}}),
                        trig2({{{-1, 0}, {1, 0}}, {{0, 2}, {0.5, 0}}})});
}

// ---- Heisenberg nilsystem ----

inline SystemDescriptor heis_system() {
    return SystemDescriptor::heisenberg(kAlpha, kBeta, 0.0);
}

inline NilPoint heis_start() { return NilPoint{0.15, 0.4, 0.6}; }

// theta at the top vertex: E(theta | Z_1) = 0, so the averages tend to 0
inline CubeSpec heis_theta_cube() {
    return CubeSpec(2, {lift2({{{1, 0}, {1, 0}}}), lift2({{{1, 0}, {1, 0}}}),
                        Observable(ThetaObservable(8))});
}

// continuous observables for the uniformity sweep
inline CubeSpec heis_uniform_cube() {
    return CubeSpec(2, {lift2({{{1, 0}, {1, 0}}}), lift2({{{0, 1}, {1, 0}}}),
                        Observable(ThetaObservable(8))});
}

inline std::vector<PhasePoint> heis_grid(int per_dim) {
    std::vector<PhasePoint> grid;
    for (int i = 0; i < per_dim; ++i)
        for (int j = 0; j < per_dim; ++j)
            for (int k = 0; k < per_dim; ++k)
                grid.push_back(NilPoint{static_cast<double>(i) / per_dim,
                                        static_cast<double>(j) / per_dim,
                                        static_cast<double>(k) / per_dim});
    return grid;
}

// (x, z) section of the nilmanifold at y = 0; nested for doubling per_dim
inline std::vector<PhasePoint> heis_section_grid(int per_dim) {
    std::vector<PhasePoint> grid;
    for (int i = 0; i < per_dim; ++i)
        for (int k = 0; k < per_dim; ++k)
            grid.push_back(NilPoint{static_cast<double>(i) / per_dim, 0.0,
                                    static_cast<double>(k) / per_dim});
    return grid;
}

// ---- doubling map with a mean-zero character at every vertex ----

inline SystemDescriptor doubling_system() { return SystemDescriptor::doubling(20240229, 48); }

inline CubeSpec doubling_cube() {
    return CubeSpec(2, {trig1({{1, {1, 0}}}), trig1({{1, {1, 0}}}), trig1({{1, {1, 0}}})});
}

// ---- Wiener-Wintner fixtures on the circle rotation ----

inline SystemDescriptor rotation_system() { return SystemDescriptor::rotation({kAlpha}); }

inline Observable ww_f0() { return trig1({{1, {1, 0}}}); }

inline PolynomialPhase ww_resonant_weight() { return PolynomialPhase{0.0, -kAlpha, 0.0}; }

inline PolynomialPhase ww_quadratic_weight() { return PolynomialPhase{0.0, 0.0, kTheta}; }

// ---- Heisenberg Wiener-Wintner field for the refinement sweep ----

inline Observable heis_field_f0() { return Observable(ThetaObservable(8)); }

inline WeightSpec heis_field_weight() {
    return HeisenbergNilseq{NilElement{kTheta, kEta, 0.0}, Observable(ThetaObservable(8))};
}

inline std::vector<std::size_t> field_schedule() { return {128, 256, 512, 1024}; }

// ---- rotation continuity fixtures (oracle-backed Lipschitz gates) ----

// survivors of the limit: e(x) + 0.125 e(2x); Lipschitz 2 pi (1 + 2*0.125)
inline CubeSpec rotation_rich_cube() {
    return CubeSpec(2, {trig1({{1, {1, 0}}, {2, {0.5, 0}}}),
                        trig1({{1, {1, 0}}, {2, {0.5, 0}}}),
                        trig1({{-1, {1, 0}}, {-2, {0.5, 0}}})});
}

inline std::vector<PhasePoint> circle_grid(int count) {
    std::vector<PhasePoint> grid;
    for (int i = 0; i < count; ++i)
        grid.push_back(TorusPoint{{static_cast<double>(i) / count}});
    return grid;
}

}  // namespace fixtures
