#include "optpot/cost.hpp"

#include "optpot/errors.hpp"

namespace optpot {

CostIntegrand CostIntegrand::linear(Field gamma) { return {Kind::Linear, std::move(gamma), 1}; }

CostIntegrand CostIntegrand::tracking(Field target) { return {Kind::Tracking, std::move(target), 1}; }

CostIntegrand CostIntegrand::energy(int sign, Field f) {
  if (sign != 1 && sign != -1) throw ArgumentError("energy cost: sign must be +1 or -1");
  return {Kind::Energy, std::move(f), sign};
}

double CostIntegrand::eval(std::size_t node, double s) const {
  switch (kind_) {
    case Kind::Linear: return data_[node] * s;
    case Kind::Tracking: {
      const double d = s - data_[node];
      return 0.5 * d * d;
    }
    case Kind::Energy: return sign_ * data_[node] * s;
  }
  return 0.0;
}

double CostIntegrand::deriv(std::size_t node, double s) const {
  switch (kind_) {
    case Kind::Linear: return data_[node];
    case Kind::Tracking: return s - data_[node];
    case Kind::Energy: return sign_ * data_[node];
  }
  return 0.0;
}

double CostIntegrand::integrate(const Field& u) const {
  const Grid& grid = u.grid();
  require_same_grid(grid, data_);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weight(i) * eval(i, u[i]);
  return acc;
}

std::string to_string(CostIntegrand::Kind kind) {
  switch (kind) {
    case CostIntegrand::Kind::Linear: return "linear";
    case CostIntegrand::Kind::Tracking: return "tracking";
    case CostIntegrand::Kind::Energy: return "energy";
  }
  return "unknown";
}

}  // namespace optpot
