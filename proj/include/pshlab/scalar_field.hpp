#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pshlab/geometry.hpp"
#include "pshlab/jet.hpp"

namespace pshlab {

/// A scalar field on R^{2n} evaluable as a second-order jet, together with
/// a predicate for where it is twice differentiable and a plain value path
/// that may be wider than the smooth domain (e.g. sqrt fields are defined
/// but not C^2 on their zero locus).
class ScalarField {
 public:
  using JetFn = std::function<Jet2(const Point&)>;
  using ValueFn = std::function<double(const Point&)>;
  using DomainFn = std::function<bool(const Point&)>;

  ScalarField() = default;
  ScalarField(std::string name, int n, JetFn jet)
      : name_(std::move(name)), n_(n), jet_(std::move(jet)) {}

  ScalarField& with_smooth_domain(DomainFn pred) {
    smooth_ = std::move(pred);
    return *this;
  }
  ScalarField& with_value(ValueFn value, DomainFn value_domain = nullptr) {
    value_ = std::move(value);
    value_domain_ = std::move(value_domain);
    return *this;
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  bool in_smooth_domain(const Point& p) const {
    return smooth_ ? smooth_(p) : true;
  }

  /// Value + gradient + Hessian. Throws outside the smooth domain so that
  /// singular loci never produce silent garbage derivatives.
  Jet2 jet(const Point& p) const {
    if (!in_smooth_domain(p))
      throw std::domain_error("field '" + name_ +
                              "': point outside smooth domain");
    Jet2 j = jet_(p);
    j.symmetrize();
    return j;
  }

  /// Plain value; defined wherever the value path is, which may include
  /// points where the jet is singular.
  double value(const Point& p) const {
    if (value_) {
      if (value_domain_ && !value_domain_(p))
        throw std::domain_error("field '" + name_ +
                                "': point outside value domain");
      return value_(p);
    }
    return jet(p).val;
  }

 private:
  std::string name_;
  int n_ = 0;
  JetFn jet_;
  ValueFn value_;
  DomainFn smooth_;
  DomainFn value_domain_;
};

}  // namespace pshlab
