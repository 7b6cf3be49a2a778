// Bounded observables on the phase spaces: trigonometric polynomials, the
// Heisenberg theta function, torus observables lifted to the nilmanifold,
// and constants.  Conditional expectations onto the known factors are
// computed symbolically on coefficients.
#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "cubeavg/systems.hpp"

namespace cubeavg {

struct TrigTerm {
    std::vector<int> freq;
    cplx coeff;
};

class TrigPolynomial {
  public:
    TrigPolynomial(int dim, std::vector<TrigTerm> terms);

    int dim() const { return dim_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    double sup_bound() const { return sup_bound_; }
    cplx mean() const;  // zero-frequency coefficient
    cplx evaluate(const TorusPoint& p) const;

  private:
    int dim_;
    std::vector<TrigTerm> terms_;
    double sup_bound_;
};

// theta(x,y,z) = sum_{|m| <= M} exp(-pi (y+m)^2) e(z + m x), the Gaussian
// theta series on the Heisenberg nilmanifold, truncated at M terms per side.
class ThetaObservable {
  public:
    explicit ThetaObservable(int truncation = 8);

    int truncation() const { return truncation_; }
    double sup_bound() const { return sup_bound_; }
    cplx evaluate(const NilPoint& p) const;

  private:
    int truncation_;
    double sup_bound_;
};

struct ConstantObservable {
    cplx value;
};

// A 2-torus trig polynomial read through the Heisenberg base coordinates.
struct TorusOnHeisenberg {
    TrigPolynomial poly;  // must have dim 2
};

class Observable {
  public:
    enum class Kind { Constant, Trig, Theta, TorusOnNil };

    Observable(ConstantObservable c) : data_(std::move(c)) {}
    Observable(TrigPolynomial p) : data_(std::move(p)) {}
    Observable(ThetaObservable t) : data_(std::move(t)) {}
    Observable(TorusOnHeisenberg t);

    static Observable constant(cplx value) { return Observable(ConstantObservable{value}); }

    Kind kind() const;
    double sup_bound() const;

    const TrigPolynomial* as_trig() const { return std::get_if<TrigPolynomial>(&data_); }
    const ThetaObservable* as_theta() const { return std::get_if<ThetaObservable>(&data_); }
    const ConstantObservable* as_constant() const {
        return std::get_if<ConstantObservable>(&data_);
    }
    const TorusOnHeisenberg* as_torus_on_nil() const {
        return std::get_if<TorusOnHeisenberg>(&data_);
    }

  private:
    std::variant<ConstantObservable, TrigPolynomial, ThetaObservable, TorusOnHeisenberg> data_;
};

cplx evaluate(const Observable& obs, const PhasePoint& p);

bool valid_for(const Observable& obs, const SystemDescriptor& system);
void require_valid_for(const Observable& obs, const SystemDescriptor& system, const char* ctx);

// E(f | Z_level) expressed as an observable on the factor system; rejects
// (kind, level) pairs without an explicit factor table entry.
Observable conditional_expectation(const SystemDescriptor& system, int level,
                                   const Observable& obs);

// result[n] = evaluate(obs, orbit(system, start, L)[n]).
std::vector<cplx> sample_sequence(const SystemDescriptor& system, const Observable& obs,
                                  const PhasePoint& start, std::size_t L);

}  // namespace cubeavg
