// Cubic averages over the nonzero vertices of the discrete cube {0,1}^ell:
// a direct enumeration kernel, convolution-accelerated kernels for ell = 2, 3,
// and the convergence / uniformity / continuity diagnostics built on them.
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cubeavg/observables.hpp"

namespace cubeavg {

// Nonzero vertex eps of {0,1}^ell, stored as the canonical integer
// index(eps) = sum eps_j 2^{j-1}; bit j-1 of `bits` is eps_j.
struct VertexIndex {
    int ell = 2;
    unsigned bits = 1;

    static VertexIndex make(int ell, unsigned bits);  // rejects the zero vertex
    unsigned index() const { return bits; }
    bool contains(int j) const { return (bits >> (j - 1)) & 1u; }
};

// "eps_1 eps_2 ... eps_ell" as a bit string, e.g. "10" for the vertex
// driven by n_1 alone; this is the key format of cube configurations.
std::string vertex_label(VertexIndex v);

// One observable per nonzero vertex, stored in canonical index order
// (vertices[index-1] is the observable at vertex `index`).
struct CubeSpec {
    int ell;
    std::vector<Observable> vertices;

    CubeSpec(int ell_, std::vector<Observable> vertices_);
    const Observable& at(unsigned bits) const { return vertices.at(bits - 1); }
    double sup_bound_product() const;
};

// (N, value) pairs with N strictly increasing.
struct SampleSeries {
    struct Entry {
        std::size_t n;
        cplx value;
    };
    std::vector<Entry> entries;
};

// Per-vertex sample sequences in canonical order (entry index = bits - 1).
using VertexSequences = std::vector<std::vector<cplx>>;

// Minimum sequence length the order-ell average at horizon N reads:
// the largest index is eps = (1,...,1) at n_1 = ... = n_ell = N-1.
std::size_t required_length(int ell, std::size_t N);

// (1/N^ell) sum over (n_1..n_ell) of the product over nonzero vertices of
// seqs[index-1][eps . n], by direct enumeration with pairwise accumulation.
// Accepts 2 <= ell <= 4.
cplx cubic_average_naive(const VertexSequences& seqs, int ell, std::size_t N);

// Convolution-accelerated kernel; ell = 2 costs O(N log N), ell = 3 costs
// O(N^2 log N).  Other orders raise an error (callers fall back to naive).
cplx cubic_average_fast(const VertexSequences& seqs, int ell, std::size_t N);

// Cubic averages of the cube's observables along the orbit of `start`, one
// entry per scheduled N (fast kernel when available).
SampleSeries dual_series(const SystemDescriptor& system, const CubeSpec& cube,
                         const PhasePoint& start, const std::vector<std::size_t>& schedule);

struct ConvergenceReport {
    cplx limit_estimate;
    std::vector<double> deltas;
    bool converged = false;
};

// Numerical Cauchy check on consecutive schedule entries.
ConvergenceReport convergence_report(const SampleSeries& series, double tol);

// For each N in `doubling_pairs`, max over the grid of |A_{2N}(x) - A_N(x)|.
// Only rotation and Heisenberg systems qualify (minimal nilsystem setting).
std::vector<double> uniform_deviation(const SystemDescriptor& system, const CubeSpec& cube,
                                      const std::vector<PhasePoint>& grid,
                                      const std::vector<std::size_t>& doubling_pairs,
                                      int threads = 1);

struct ModulusPoint {
    double delta;
    double omega;
};

// Empirical modulus of continuity over the dyadic ladder delta = 2^-2..2^-7:
// omega(delta) = max |value_i - value_j| over pairs with
// max-coordinate circle distance <= delta.  Nondecreasing in delta.
std::vector<ModulusPoint> continuity_modulus(const std::vector<std::vector<double>>& points,
                                             const std::vector<cplx>& values, int threads = 1);

// Coordinates used by continuity_modulus for a phase point.
std::vector<double> point_coords(const PhasePoint& p);

// max over coordinates of min(|a-b|, 1-|a-b|).
double circle_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cubeavg
