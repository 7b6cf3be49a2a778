#include "cubeavg/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cubeavg {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

TrigPolynomial::TrigPolynomial(int dim, std::vector<TrigTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
    require(dim_ >= 1, "TrigPolynomial: dimension must be >= 1");
    double bound = 0.0;
    for (const auto& t : terms_) {
        require(static_cast<int>(t.freq.size()) == dim_,
                "TrigPolynomial: frequency vector dimension mismatch");
        require(std::isfinite(t.coeff.real()) && std::isfinite(t.coeff.imag()),
                "TrigPolynomial: non-finite coefficient");
        bound += std::abs(t.coeff);
    }
    auto sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const TrigTerm& a, const TrigTerm& b) { return a.freq < b.freq; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        require(sorted[i - 1].freq != sorted[i].freq,
                "TrigPolynomial: duplicate frequency vector");
    sup_bound_ = bound;
}

cplx TrigPolynomial::mean() const {
    for (const auto& t : terms_) {
        bool zero = std::all_of(t.freq.begin(), t.freq.end(), [](int k) { return k == 0; });
        if (zero) return t.coeff;
    }
    return {0.0, 0.0};
}

cplx TrigPolynomial::evaluate(const TorusPoint& p) const {
    require(static_cast<int>(p.coords.size()) == dim_,
            "TrigPolynomial::evaluate: point dimension mismatch");
    cplx acc{0.0, 0.0};
    for (const auto& t : terms_) {
        double phase = 0.0;
        for (int i = 0; i < dim_; ++i) phase += static_cast<double>(t.freq[i]) * p.coords[i];
        acc += t.coeff * cis(phase);
    }
    return acc;
}

ThetaObservable::ThetaObservable(int truncation) : truncation_(truncation) {
    require(truncation_ >= 4, "ThetaObservable: truncation M must be >= 4");
    // sup over the fiber is attained at y = 0
    double bound = 0.0;
    for (int m = -truncation_; m <= truncation_; ++m)
        bound += std::exp(-std::numbers::pi * static_cast<double>(m) * static_cast<double>(m));
    sup_bound_ = bound;
}

cplx ThetaObservable::evaluate(const NilPoint& p) const {
    cplx acc{0.0, 0.0};
    for (int m = -truncation_; m <= truncation_; ++m) {
        double ym = p.y + static_cast<double>(m);
        double gauss = std::exp(-std::numbers::pi * ym * ym);
        acc += gauss * cis(p.z + static_cast<double>(m) * p.x);
    }
    return acc;
}

Observable::Observable(TorusOnHeisenberg t) : data_(std::move(t)) {
    const auto& lifted = std::get<TorusOnHeisenberg>(data_);
    require(lifted.poly.dim() == 2, "TorusOnHeisenberg: polynomial must have dimension 2");
}

Observable::Kind Observable::kind() const {
    if (as_constant()) return Kind::Constant;
    if (as_trig()) return Kind::Trig;
    if (as_theta()) return Kind::Theta;
    return Kind::TorusOnNil;
}

double Observable::sup_bound() const {
    switch (kind()) {
        case Kind::Constant: return std::abs(as_constant()->value);
        case Kind::Trig: return as_trig()->sup_bound();
        case Kind::Theta: return as_theta()->sup_bound();
        case Kind::TorusOnNil: return as_torus_on_nil()->poly.sup_bound();
    }
    return 0.0;
}

cplx evaluate(const Observable& obs, const PhasePoint& p) {
    if (const auto* c = obs.as_constant()) return c->value;
    if (const auto* t = obs.as_trig()) {
        const auto* tp = std::get_if<TorusPoint>(&p);
        require(tp != nullptr, "evaluate: trig polynomial needs a torus point");
        return t->evaluate(*tp);
    }
    if (const auto* th = obs.as_theta()) {
        const auto* np = std::get_if<NilPoint>(&p);
        require(np != nullptr, "evaluate: theta observable needs a nilmanifold point");
        return th->evaluate(*np);
    }
    const auto* lifted = obs.as_torus_on_nil();
    const auto* np = std::get_if<NilPoint>(&p);
    require(np != nullptr, "evaluate: lifted torus observable needs a nilmanifold point");
    return lifted->poly.evaluate(TorusPoint{{np->x, np->y}});
}

bool valid_for(const Observable& obs, const SystemDescriptor& system) {
    switch (system.kind) {
        case SystemKind::Rotation:
            return obs.kind() == Observable::Kind::Constant ||
                   (obs.as_trig() && obs.as_trig()->dim() == system.phase_dim());
        case SystemKind::SkewProduct:
            return obs.kind() == Observable::Kind::Constant ||
                   (obs.as_trig() && obs.as_trig()->dim() == 2);
        case SystemKind::Doubling:
            return obs.kind() == Observable::Kind::Constant ||
                   (obs.as_trig() && obs.as_trig()->dim() == 1);
        case SystemKind::Heisenberg:
            return obs.kind() == Observable::Kind::Constant ||
                   obs.kind() == Observable::Kind::Theta ||
                   obs.kind() == Observable::Kind::TorusOnNil;
    }
    return false;
}

void require_valid_for(const Observable& obs, const SystemDescriptor& system, const char* ctx) {
    require(valid_for(obs, system),
            std::string(ctx) + ": observable variant does not match the system's phase space");
}

namespace {

Observable skew_level1_expectation(const Observable& obs) {
    if (obs.as_constant()) return obs;
    const TrigPolynomial& poly = *obs.as_trig();
    std::vector<TrigTerm> kept;
    for (const auto& t : poly.terms()) {
        if (t.freq[1] == 0) kept.push_back(TrigTerm{{t.freq[0]}, t.coeff});
    }
    return Observable(TrigPolynomial(1, std::move(kept)));
}

Observable heis_level1_expectation(const Observable& obs) {
    if (obs.as_constant()) return obs;
    if (obs.as_theta()) {
        // every theta term carries e(z); the fiber average of e(z) vanishes
        return Observable::constant({0.0, 0.0});
    }
    return Observable(obs.as_torus_on_nil()->poly);
}

}  // namespace

Observable conditional_expectation(const SystemDescriptor& system, int level,
                                   const Observable& obs) {
    require_valid_for(obs, system, "conditional_expectation");
    FactorProjection proj = make_projection(system, level);  // validates (kind, level)
    switch (system.kind) {
        case SystemKind::Rotation:
            return obs;
        case SystemKind::SkewProduct:
            return (level == 1) ? skew_level1_expectation(obs) : obs;
        case SystemKind::Doubling: {
            if (obs.as_constant()) return obs;
            return Observable::constant(obs.as_trig()->mean());
        }
        case SystemKind::Heisenberg:
            return (proj.target == ProjectionTarget::CoordinateDrop)
                       ? heis_level1_expectation(obs)
                       : obs;
    }
    throw std::logic_error("conditional_expectation: unreachable");
}

std::vector<cplx> sample_sequence(const SystemDescriptor& system, const Observable& obs,
                                  const PhasePoint& start, std::size_t L) {
    require_valid_for(obs, system, "sample_sequence");
    auto points = orbit(system, start, L);
    std::vector<cplx> out(points.size());
    for (std::size_t n = 0; n < points.size(); ++n) out[n] = evaluate(obs, points[n]);
    return out;
}

}  // namespace cubeavg
