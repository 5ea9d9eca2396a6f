#pragma once

#include <cstddef>
#include <string>

#include "optpot/grid.hpp"

namespace optpot {

/// The integrand j(x, s) of the cost, evaluated nodewise.
///
///   Linear    j = gamma(x) s
///   Tracking  j = 1/2 |s - target(x)|^2
///   Energy    j = sign f(x) s   (sign = +1 minimizes, -1 maximizes the energy)
class CostIntegrand {
 public:
  enum class Kind { Linear, Tracking, Energy };

  static CostIntegrand linear(Field gamma);
  static CostIntegrand tracking(Field target);
  static CostIntegrand energy(int sign, Field f);

  Kind kind() const { return kind_; }
  int sign() const { return sign_; }
  const Field& data() const { return data_; }

  double eval(std::size_t node, double s) const;
  /// d/ds j(x_node, s).
  double deriv(std::size_t node, double s) const;

  /// Sum over all nodes of weight * j(x, u(x)).
  double integrate(const Field& u) const;

 private:
  CostIntegrand(Kind kind, Field data, int sign) : kind_(kind), sign_(sign), data_(std::move(data)) {}

  Kind kind_;
  int sign_ = 1;
  Field data_;
};

std::string to_string(CostIntegrand::Kind kind);

}  // namespace optpot
