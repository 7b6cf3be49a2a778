// The four concrete ergodic systems, their orbit generators, Heisenberg group
// arithmetic, and the explicit factor projections.
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cubeavg/numeric.hpp"

namespace cubeavg {

// Point of a torus T^d; every coordinate in [0,1).  The zero-dimensional
// case (empty coords) only appears as the image of the trivial projection.
struct TorusPoint {
    std::vector<double> coords;
};

// Element of the 3-dimensional Heisenberg group, i.e. the upper-unipotent
// matrix [[1, x, z], [0, 1, y], [0, 0, 1]].  Coordinates are unconstrained.
struct NilElement {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Fundamental-domain representative of a coset g*Gamma; coords in [0,1)^3.
struct NilPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using PhasePoint = std::variant<TorusPoint, NilPoint>;

enum class SystemKind { Rotation, SkewProduct, Doubling, Heisenberg };

struct SystemDescriptor {
    SystemKind kind = SystemKind::Rotation;
    // Rotation: d entries; SkewProduct: {alpha}; Heisenberg: {alpha, beta, gamma}.
    std::vector<double> params;
    std::uint64_t seed = 0;   // Doubling only
    int precision_bits = 48;  // Doubling only, J in [16, 60]
    bool declared_irrational = true;

    static SystemDescriptor rotation(std::vector<double> alpha, bool declared_irrational = true);
    static SystemDescriptor skew_product(double alpha, bool declared_irrational = true);
    static SystemDescriptor doubling(std::uint64_t seed, int precision_bits = 48);
    static SystemDescriptor heisenberg(double alpha, double beta, double gamma,
                                       bool declared_irrational = true);

    int phase_dim() const;
};

// Heisenberg group law: the matrix product, (gx+hx, gy+hy, gz+hz+gx*hy).
NilElement heis_mul(const NilElement& g, const NilElement& h);

// a^n in closed form: (n ax, n ay, n az + n(n-1)/2 * ax*ay).
NilElement heis_power(const NilElement& a, std::uint64_t n);

// Fundamental-domain representative of g*Gamma.  Reduction order is fixed
// (y first, then x, then the corrected z) so the representative is canonical.
NilPoint heis_reduce(const NilElement& g);

// result[n] = reduced T^n(start), n = 0..L-1, each sample by closed form.
// For the doubling map the trajectory is the shift of the seeded bit stream
// (see the descriptor's seed/precision_bits); the start argument is validated
// for shape only and its value is not consulted.
std::vector<PhasePoint> orbit(const SystemDescriptor& system, const PhasePoint& start,
                              std::size_t L);

// Convenience: orbit(...,2)[1].
PhasePoint step(const SystemDescriptor& system, const PhasePoint& p);

enum class ProjectionTarget { Identity, CoordinateDrop, Trivial };

// The factor map pi_{level} onto the level-th characteristic factor, for the
// (kind, level) pairs where that factor is explicitly known.
struct FactorProjection {
    SystemDescriptor source;
    int level = 1;
    ProjectionTarget target = ProjectionTarget::Identity;
    int keep = 0;  // leading coordinates kept when target == CoordinateDrop
};

FactorProjection make_projection(const SystemDescriptor& system, int level);

PhasePoint apply_projection(const FactorProjection& proj, const PhasePoint& p);

// The factor system the projection lands in.  Rejected for the doubling map
// (its factor is the one-point system, which has no descriptor).
SystemDescriptor factor_system(const SystemDescriptor& system, int level);

// True when x is not a dyadic rational p/2^k with k <= 20; parameters
// declared irrational must pass this check.
bool plausibly_irrational(double x);

// First L+J bits of the doubling map's seeded bit stream.
std::vector<std::uint8_t> doubling_bits(std::uint64_t seed, std::size_t count);

}  // namespace cubeavg
