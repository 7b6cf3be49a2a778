// Calibration sweeps for the trend-based gates.  Prints the observed
// envelopes; the acceptance suite freezes each at twice the value recorded
// here.  Rerun after changing any fixture in fixtures.hpp.
#include <cstdio>

#include "fixtures.hpp"

using namespace cubeavg;
using namespace fixtures;

namespace {

void sweep_skew_eq2() {
    std::printf("== skew product: |dual(f) - dual(E f)| ==\n");
    auto sys = skew_system();
    auto cube = skew_cube();
    auto start = skew_start();

    CubeSpec factor_cube(2, {conditional_expectation(sys, 1, cube.at(1)),
                             conditional_expectation(sys, 1, cube.at(2)),
                             conditional_expectation(sys, 1, cube.at(3))});
    auto factor = factor_system(sys, 1);
    auto proj = make_projection(sys, 1);
    auto factor_start = apply_projection(proj, start);

    auto schedule = default_schedule();
    auto full = dual_series(sys, cube, start, schedule);
    auto base = dual_series(factor, factor_cube, factor_start, schedule);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        double diff = std::abs(full.entries[k].value - base.entries[k].value);
        std::printf("  N=%5zu  diff=%.6e\n", schedule[k], diff);
    }
}

void sweep_heis_theta() {
    std::printf("== heisenberg: |A_N| with a theta vertex ==\n");
    auto series = dual_series(heis_system(), heis_theta_cube(), heis_start(),
                              default_schedule());
    for (const auto& e : series.entries)
        std::printf("  N=%5zu  |A|=%.6e\n", e.n, std::abs(e.value));
}

void sweep_doubling() {
    std::printf("== doubling: |A_N| with mean-zero vertices ==\n");
    for (std::uint64_t seed : {20240229ull, 7ull, 99991ull}) {
        auto sys = SystemDescriptor::doubling(seed, 48);
        auto series = dual_series(sys, doubling_cube(), TorusPoint{{0.0}}, default_schedule());
        std::printf("  seed=%llu:", static_cast<unsigned long long>(seed));
        for (const auto& e : series.entries) std::printf(" %.4e", std::abs(e.value));
        std::printf("\n");
    }
}

void sweep_ww_quadratic() {
    std::printf("== rotation: quadratic-phase weighted averages ==\n");
    auto sys = rotation_system();
    auto weight = ww_quadratic_weight();
    std::vector<std::size_t> schedule;
    for (int k = 5; k <= 14; ++k) schedule.push_back(std::size_t{1} << k);
    auto wseq = weight_sequence(weight, schedule.back());
    for (double x0 : {0.0, 0.35, 0.8}) {
        auto fseq = sample_sequence(sys, ww_f0(), TorusPoint{{x0}}, schedule.back());
        std::printf("  x0=%.2f:", x0);
        for (std::size_t N : schedule) std::printf(" %.4e", std::abs(ww_average(fseq, wseq, N)));
        std::printf("\n");
    }
}

void sweep_heis_uniform() {
    std::printf("== heisenberg: sup-grid |A_2N - A_N| on a 16^3 grid ==\n");
    auto devs = uniform_deviation(heis_system(), heis_uniform_cube(), heis_grid(16),
                                  {32, 64, 128}, 2);
    std::printf("  N=32:  %.6e\n  N=64:  %.6e\n  N=128: %.6e\n", devs[0], devs[1], devs[2]);
}

void sweep_heis_refinement() {
    std::printf("== heisenberg: ww field modulus under 32 -> 64 refinement ==\n");
    auto sys = heis_system();
    auto coarse = ww_limit_field(sys, heis_field_f0(), heis_field_weight(),
                                 heis_section_grid(32), field_schedule(), 2);
    auto fine = ww_limit_field(sys, heis_field_f0(), heis_field_weight(),
                               heis_section_grid(64), field_schedule(), 2);
    double max_delta_est = 0.0;
    for (const auto& s : fine.series) {
        const auto& e = s.entries;
        max_delta_est = std::max(
            max_delta_est, std::abs(e[e.size() - 1].value - e[e.size() - 2].value));
    }
    std::printf("  max last-step estimate delta = %.6e\n", max_delta_est);
    for (std::size_t k = 0; k < coarse.modulus.size(); ++k) {
        double growth = fine.modulus[k].omega - coarse.modulus[k].omega;
        std::printf("  delta=%.6f  omega32=%.6e  omega64=%.6e  growth=%.6e\n",
                    coarse.modulus[k].delta, coarse.modulus[k].omega, fine.modulus[k].omega,
                    growth);
    }
}

void sweep_rotation_continuity() {
    std::printf("== rotation: richer-cube field vs oracle Lipschitz bound ==\n");
    auto sys = rotation_system();
    auto cube = rotation_rich_cube();
    auto grid = circle_grid(64);
    std::vector<std::size_t> schedule = {128, 256, 512, 1024};

    std::vector<cplx> finals(grid.size());
    double conv_tol = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto series = dual_series(sys, cube, grid[i], schedule);
        finals[i] = series.entries.back().value;
        cplx limit = rotation_cubic_exact(cube, sys.params,
                                          std::get<TorusPoint>(grid[i]), std::nullopt);
        conv_tol = std::max(conv_tol, std::abs(finals[i] - limit));
    }
    std::printf("  convergence tolerance (max |A_1024 - limit|) = %.6e\n", conv_tol);

    std::vector<std::vector<double>> coords;
    for (const auto& p : grid) coords.push_back(point_coords(p));
    auto modulus = continuity_modulus(coords, finals);
    const double lipschitz = 2.0 * std::numbers::pi * 1.25;
    for (const auto& m : modulus)
        std::printf("  delta=%.6f  omega=%.6e  bound=%.6e\n", m.delta, m.omega,
                    lipschitz * m.delta + 2.0 * conv_tol);
}

}  // namespace

int main() {
    sweep_skew_eq2();
    sweep_heis_theta();
    sweep_doubling();
    sweep_ww_quadratic();
    sweep_heis_uniform();
    sweep_heis_refinement();
    sweep_rotation_continuity();
    return 0;
}
