#include "cubeavg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cubeavg {

namespace {

constexpr double kResonanceGuard = 1e-6;
constexpr double kExactResonance = 1e-12;
constexpr std::size_t kSelectionCap = 1'000'000;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Vertex observables normalized to explicit term lists; a constant is the
// zero-frequency monomial.
std::vector<TrigTerm> vertex_terms(const Observable& obs, std::size_t dim, const char* ctx) {
    if (const auto* c = obs.as_constant())
        return {TrigTerm{std::vector<int>(dim, 0), c->value}};
    const auto* poly = obs.as_trig();
    require(poly != nullptr,
            std::string(ctx) + ": vertex observables must be trig polynomials or constants");
    require(poly->dim() == static_cast<int>(dim),
            std::string(ctx) + ": vertex polynomial dimension mismatch");
    return poly->terms();
}

double dot(const std::vector<double>& alpha, const std::vector<long long>& k) {
    Dd acc{0.0, 0.0};
    for (std::size_t i = 0; i < alpha.size(); ++i)
        acc = dd_add(acc, two_prod(alpha[i], static_cast<double>(k[i])));
    return acc.hi + acc.lo;
}

}  // namespace

cplx dirichlet_mean(double t, std::size_t N) {
    require(N >= 1, "dirichlet_mean: N must be >= 1");
    if (t == std::round(t)) return {1.0, 0.0};
    double den = static_cast<double>(N) * sinpi(t);
    double num = sinpi(two_prod(static_cast<double>(N), t));
    Dd half_phase = dd_mul(two_prod(static_cast<double>(N - 1), t), 0.5);
    return cis(half_phase) * (num / den);
}

cplx rotation_cubic_exact(const CubeSpec& cube, const std::vector<double>& alpha,
                          const TorusPoint& x, std::optional<std::size_t> N) {
    const std::size_t dim = alpha.size();
    require(x.coords.size() == dim, "rotation_cubic_exact: point/alpha dimension mismatch");
    const int ell = cube.ell;
    const unsigned vertex_count = (1u << ell) - 1;

    std::vector<std::vector<TrigTerm>> terms;
    terms.reserve(vertex_count);
    std::size_t selections = 1;
    for (unsigned v = 1; v <= vertex_count; ++v) {
        terms.push_back(vertex_terms(cube.at(v), dim, "rotation_cubic_exact"));
        if (terms.back().empty()) return {0.0, 0.0};  // zero polynomial at some vertex
        selections *= terms.back().size();
        require(selections <= kSelectionCap,
                "rotation_cubic_exact: term-selection count exceeds " +
                    std::to_string(kSelectionCap));
    }

    cplx total{0.0, 0.0};
    std::vector<std::size_t> pick(vertex_count, 0);
    for (std::size_t s = 0; s < selections; ++s) {
        cplx coeff{1.0, 0.0};
        std::vector<long long> freq_sum(dim, 0);
        std::vector<std::vector<long long>> K(static_cast<std::size_t>(ell),
                                              std::vector<long long>(dim, 0));
        for (unsigned v = 1; v <= vertex_count; ++v) {
            const TrigTerm& t = terms[v - 1][pick[v - 1]];
            coeff *= t.coeff;
            for (std::size_t i = 0; i < dim; ++i) {
                freq_sum[i] += t.freq[i];
                for (int j = 0; j < ell; ++j)
                    if (v & (1u << j)) K[static_cast<std::size_t>(j)][i] += t.freq[i];
            }
        }

        double phase = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            phase += static_cast<double>(freq_sum[i]) * x.coords[i];
        cplx term = coeff * cis(phase);

        for (int j = 0; j < ell; ++j) {
            const auto& Kj = K[static_cast<std::size_t>(j)];
            bool zero = std::all_of(Kj.begin(), Kj.end(), [](long long k) { return k == 0; });
            if (N.has_value()) {
                term *= zero ? cplx{1.0, 0.0} : dirichlet_mean(dot(alpha, Kj), *N);
            } else if (!zero) {
                double d = dist_to_int(dot(alpha, Kj));
                if (d < kResonanceGuard)
                    throw std::domain_error(
                        "rotation_cubic_exact: limit query hit a near-resonance "
                        "(dist(K.alpha, Z) = " +
                        std::to_string(d) +
                        " < 1e-6); the finite-N/limit comparison is meaningless here");
                term = {0.0, 0.0};
            }
        }
        total += term;

        for (std::size_t v = 0; v < vertex_count; ++v) {
            if (++pick[v] < terms[v].size()) break;
            pick[v] = 0;
        }
    }
    return total;
}

cplx product_of_integrals(const CubeSpec& cube) {
    cplx prod{1.0, 0.0};
    for (const auto& obs : cube.vertices) {
        if (const auto* c = obs.as_constant()) {
            prod *= c->value;
        } else if (const auto* poly = obs.as_trig()) {
            prod *= poly->mean();
        } else if (const auto* lifted = obs.as_torus_on_nil()) {
            prod *= lifted->poly.mean();
        } else {
            throw std::invalid_argument(
                "product_of_integrals: theta observables expose no closed-form integral");
        }
    }
    return prod;
}

cplx ww_rotation_exact(const TrigPolynomial& f, double alpha, double beta, double x,
                       std::optional<std::size_t> N) {
    require(f.dim() == 1, "ww_rotation_exact: observable must be a 1-torus polynomial");
    cplx total{0.0, 0.0};
    for (const auto& t : f.terms()) {
        double k = static_cast<double>(t.freq[0]);
        Dd freq = dd_add(two_prod(k, alpha), beta);
        double tval = freq.hi + freq.lo;
        cplx character = t.coeff * cis(k * x);
        if (N.has_value()) {
            total += character * dirichlet_mean(tval, *N);
        } else {
            double d = dist_to_int(tval);
            if (d <= kExactResonance) {
                total += character;
            } else if (d < kResonanceGuard) {
                throw std::domain_error(
                    "ww_rotation_exact: limit query hit a near-resonance (dist(k alpha + "
                    "beta, Z) = " +
                    std::to_string(d) + " < 1e-6)");
            }
        }
    }
    return total;
}

}  // namespace cubeavg
