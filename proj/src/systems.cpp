#include "cubeavg/systems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cubeavg {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void validate_irrational(const std::vector<double>& params, const char* what) {
    for (double p : params) {
        if (!plausibly_irrational(p))
            throw std::invalid_argument(std::string(what) +
                                        ": parameter declared irrational is a low-denominator "
                                        "dyadic rational: " +
                                        std::to_string(p));
    }
}

const TorusPoint& as_torus(const PhasePoint& p, const char* ctx) {
    const auto* t = std::get_if<TorusPoint>(&p);
    if (!t) throw std::invalid_argument(std::string(ctx) + ": expected a torus point");
    return *t;
}

const NilPoint& as_nil(const PhasePoint& p, const char* ctx) {
    const auto* n = std::get_if<NilPoint>(&p);
    if (!n) throw std::invalid_argument(std::string(ctx) + ": expected a nilmanifold point");
    return *n;
}

double exact_binomial2(std::uint64_t n) {
    // n(n-1)/2 as an exact double; n stays far below 2^26 in practice.
    std::uint64_t c2 = (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
    return static_cast<double>(c2);
}

// Reduce (qx, qy, qz) held as double-doubles to the fundamental domain,
// following the fixed order: y, then x, then the z corrected by qx*qy_int.
NilPoint reduce_dd(Dd qx, Dd qy, Dd qz) {
    double q = -dd_floor(qy);
    Dd z2 = dd_add(qz, dd_mul(qx, q));
    NilPoint out;
    out.x = dd_frac(qx);
    out.y = dd_frac(qy);
    out.z = dd_frac(z2);
    return out;
}

}  // namespace

bool plausibly_irrational(double x) {
    if (!std::isfinite(x)) return false;
    double scaled = std::ldexp(x, 20);
    return scaled != std::floor(scaled);
}

SystemDescriptor SystemDescriptor::rotation(std::vector<double> alpha, bool declared_irrational) {
    require(!alpha.empty(), "rotation: dimension must be >= 1");
    SystemDescriptor s;
    s.kind = SystemKind::Rotation;
    s.params = std::move(alpha);
    s.declared_irrational = declared_irrational;
    if (declared_irrational) validate_irrational(s.params, "rotation");
    return s;
}

SystemDescriptor SystemDescriptor::skew_product(double alpha, bool declared_irrational) {
    SystemDescriptor s;
    s.kind = SystemKind::SkewProduct;
    s.params = {alpha};
    s.declared_irrational = declared_irrational;
    if (declared_irrational) validate_irrational(s.params, "skew_product");
    return s;
}

SystemDescriptor SystemDescriptor::doubling(std::uint64_t seed, int precision_bits) {
    require(precision_bits >= 16 && precision_bits <= 60,
            "doubling: precision J must lie in [16, 60]");
    SystemDescriptor s;
    s.kind = SystemKind::Doubling;
    s.seed = seed;
    s.precision_bits = precision_bits;
    s.declared_irrational = false;
    return s;
}

SystemDescriptor SystemDescriptor::heisenberg(double alpha, double beta, double gamma,
                                              bool declared_irrational) {
    SystemDescriptor s;
    s.kind = SystemKind::Heisenberg;
    s.params = {alpha, beta, gamma};
    s.declared_irrational = declared_irrational;
    // gamma = 0 is the usual choice; only the base frequencies carry the
    // irrationality requirement.
    if (declared_irrational) validate_irrational({alpha, beta}, "heisenberg");
    return s;
}

int SystemDescriptor::phase_dim() const {
    switch (kind) {
        case SystemKind::Rotation: return static_cast<int>(params.size());
        case SystemKind::SkewProduct: return 2;
        case SystemKind::Doubling: return 1;
        case SystemKind::Heisenberg: return 3;
    }
    return 0;
}

NilElement heis_mul(const NilElement& g, const NilElement& h) {
    // z compensated: one rounding instead of three once coordinates are large
    Dd z = dd_add(dd_add(two_prod(g.x, h.y), g.z), h.z);
    return {g.x + h.x, g.y + h.y, z.hi + z.lo};
}

NilElement heis_power(const NilElement& a, std::uint64_t n) {
    double nd = static_cast<double>(n);
    double c2 = exact_binomial2(n);
    Dd z = dd_add(dd_mul(two_prod(a.x, a.y), c2), two_prod(nd, a.z));
    return {nd * a.x, nd * a.y, z.hi + z.lo};
}

NilPoint heis_reduce(const NilElement& g) {
    if (!std::isfinite(g.x) || !std::isfinite(g.y) || !std::isfinite(g.z))
        throw std::invalid_argument("heis_reduce: non-finite input");
    double q = -std::floor(g.y);
    double p = -std::floor(g.x);
    double z2 = g.z + g.x * q;
    double r = -std::floor(z2);
    NilPoint out;
    out.x = g.x + p;
    out.y = g.y + q;
    out.z = z2 + r;
    if (out.x >= 1.0) out.x = 0.0;
    if (out.y >= 1.0) out.y = 0.0;
    if (out.z >= 1.0) out.z = 0.0;
    return out;
}

std::vector<std::uint8_t> doubling_bits(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

std::vector<PhasePoint> orbit(const SystemDescriptor& system, const PhasePoint& start,
                              std::size_t L) {
    require(L >= 1, "orbit: L must be >= 1");
    std::vector<PhasePoint> out;
    out.reserve(L);

    switch (system.kind) {
        case SystemKind::Rotation: {
            const TorusPoint& x0 = as_torus(start, "orbit(rotation)");
            const std::size_t d = system.params.size();
            require(x0.coords.size() == d,
                    "orbit(rotation): start has dimension " + std::to_string(x0.coords.size()) +
                        ", system has dimension " + std::to_string(d));
            for (std::size_t n = 0; n < L; ++n) {
                TorusPoint p;
                p.coords.resize(d);
                for (std::size_t i = 0; i < d; ++i) {
                    Dd v = dd_add(two_prod(static_cast<double>(n), system.params[i]),
                                  x0.coords[i]);
                    p.coords[i] = dd_frac(v);
                }
                out.emplace_back(std::move(p));
            }
            break;
        }
        case SystemKind::SkewProduct: {
            const TorusPoint& p0 = as_torus(start, "orbit(skew_product)");
            require(p0.coords.size() == 2, "orbit(skew_product): start must be 2-dimensional");
            const double alpha = system.params[0];
            const double x0 = p0.coords[0], y0 = p0.coords[1];
            for (std::size_t n = 0; n < L; ++n) {
                double nd = static_cast<double>(n);
                double c2 = exact_binomial2(n);
                Dd xn = dd_add(two_prod(nd, alpha), x0);
                Dd yn = dd_add(dd_add(two_prod(nd, x0), two_prod(c2, alpha)), y0);
                TorusPoint p;
                p.coords = {dd_frac(xn), dd_frac(yn)};
                out.emplace_back(std::move(p));
            }
            break;
        }
        case SystemKind::Doubling: {
            const TorusPoint& p0 = as_torus(start, "orbit(doubling)");
            require(p0.coords.size() == 1, "orbit(doubling): start must be 1-dimensional");
            const int J = system.precision_bits;
            auto bits = doubling_bits(system.seed, L + static_cast<std::size_t>(J));
            for (std::size_t n = 0; n < L; ++n) {
                double v = 0.0;
                for (int j = J - 1; j >= 0; --j)
                    v = 0.5 * (v + static_cast<double>(bits[n + static_cast<std::size_t>(j)]));
                TorusPoint p;
                p.coords = {v};
                out.emplace_back(std::move(p));
            }
            break;
        }
        case SystemKind::Heisenberg: {
            const NilPoint& g0 = as_nil(start, "orbit(heisenberg)");
            const double a = system.params[0], b = system.params[1], c = system.params[2];
            Dd ab = two_prod(a, b);
            Dd ay0 = two_prod(a, g0.y);
            for (std::size_t n = 0; n < L; ++n) {
                double nd = static_cast<double>(n);
                double c2 = exact_binomial2(n);
                // power(a, n) * g0, coordinate-wise in double-double
                Dd qx = dd_add(two_prod(nd, a), g0.x);
                Dd qy = dd_add(two_prod(nd, b), g0.y);
                Dd qz = dd_add(dd_add(two_prod(nd, c), dd_mul(ab, c2)),
                               dd_add(dd_mul(ay0, nd), Dd{g0.z, 0.0}));
                out.emplace_back(reduce_dd(qx, qy, qz));
            }
            break;
        }
    }
    return out;
}

PhasePoint step(const SystemDescriptor& system, const PhasePoint& p) {
    return orbit(system, p, 2)[1];
}

FactorProjection make_projection(const SystemDescriptor& system, int level) {
    require(level >= 1, "make_projection: level must be >= 1");
    FactorProjection proj;
    proj.source = system;
    proj.level = level;
    switch (system.kind) {
        case SystemKind::Rotation:
            proj.target = ProjectionTarget::Identity;
            break;
        case SystemKind::SkewProduct:
            if (level == 1) {
                proj.target = ProjectionTarget::CoordinateDrop;
                proj.keep = 1;
            } else {
                proj.target = ProjectionTarget::Identity;
            }
            break;
        case SystemKind::Doubling:
            proj.target = ProjectionTarget::Trivial;
            break;
        case SystemKind::Heisenberg:
            if (level == 1) {
                proj.target = ProjectionTarget::CoordinateDrop;
                proj.keep = 2;
            } else {
                proj.target = ProjectionTarget::Identity;
            }
            break;
    }
    return proj;
}

PhasePoint apply_projection(const FactorProjection& proj, const PhasePoint& p) {
    switch (proj.target) {
        case ProjectionTarget::Identity:
            return p;
        case ProjectionTarget::Trivial:
            return TorusPoint{};  // the one-point factor
        case ProjectionTarget::CoordinateDrop: {
            if (proj.source.kind == SystemKind::Heisenberg) {
                const NilPoint& n = as_nil(p, "apply_projection(heisenberg)");
                return TorusPoint{{n.x, n.y}};
            }
            const TorusPoint& t = as_torus(p, "apply_projection");
            require(static_cast<int>(t.coords.size()) >= proj.keep,
                    "apply_projection: point has fewer coordinates than the projection keeps");
            TorusPoint out;
            out.coords.assign(t.coords.begin(), t.coords.begin() + proj.keep);
            return out;
        }
    }
    throw std::logic_error("apply_projection: unreachable");
}

SystemDescriptor factor_system(const SystemDescriptor& system, int level) {
    require(level >= 1, "factor_system: level must be >= 1");
    switch (system.kind) {
        case SystemKind::Rotation:
            return system;
        case SystemKind::SkewProduct:
            if (level == 1)
                return SystemDescriptor::rotation({system.params[0]}, system.declared_irrational);
            return system;
        case SystemKind::Heisenberg:
            if (level == 1)
                return SystemDescriptor::rotation({system.params[0], system.params[1]},
                                                  system.declared_irrational);
            return system;
        case SystemKind::Doubling:
            throw std::invalid_argument(
                "factor_system: the doubling map's factor is the one-point system; project "
                "observables with conditional_expectation instead");
    }
    throw std::logic_error("factor_system: unreachable");
}

}  // namespace cubeavg
