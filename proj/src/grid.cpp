#include "optpot/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "optpot/errors.hpp"

namespace optpot {

using std::numbers::pi;

double Grid::x(std::size_t i) const {
  if (kind_ == GridKind::Radial) return h_ * static_cast<double>(i);
  return -1.0 + h_ * static_cast<double>(i % static_cast<std::size_t>(n_));
}

double Grid::y(std::size_t i) const {
  if (kind_ == GridKind::Radial) return 0.0;
  return -1.0 + h_ * static_cast<double>(i / static_cast<std::size_t>(n_));
}

double Grid::radius(std::size_t i) const { return std::hypot(x(i), y(i)); }

std::size_t Grid::center_node() const {
  if (kind_ == GridKind::Radial) return 0;
  const auto mid = static_cast<std::size_t>(n_ / 2);
  return mid * static_cast<std::size_t>(n_) + mid;
}

std::vector<double> Grid::apply_stiffness(std::span<const double> v) const {
  std::vector<double> out(size(), 0.0);
  for (std::size_t i : interior_nodes_) {
    double acc = diag_[i] * v[i];
    for (const auto& e : stiffness_row(i)) acc += e.value * v[e.col];
    out[i] = acc;
  }
  return out;
}

void Grid::add_coupling(std::size_t i, std::size_t j, double value,
                        std::vector<std::vector<StencilEntry>>& rows) {
  // Edge i-j with conductance `value`; a Dirichlet end only feeds the diagonal.
  if (interior(i)) diag_[i] += value;
  if (interior(j)) diag_[j] += value;
  if (interior(i) && interior(j)) {
    rows[i].push_back({j, -value});
    rows[j].push_back({i, -value});
  }
}

void Grid::finalize(std::vector<std::vector<StencilEntry>>& rows) {
  row_start_.assign(size() + 1, 0);
  for (std::size_t i = 0; i < size(); ++i) row_start_[i + 1] = row_start_[i] + rows[i].size();
  entries_.reserve(row_start_.back());
  for (auto& row : rows) entries_.insert(entries_.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < size(); ++i) {
    if (interior(i)) interior_nodes_.push_back(i);
  }
}

GridPtr build_radial(int n) {
  if (n < 3) throw ArgumentError("build_radial: n must be >= 3");
  std::shared_ptr<Grid> grid(new Grid());
  const auto count = static_cast<std::size_t>(n);
  grid->kind_ = GridKind::Radial;
  grid->n_ = n;
  grid->h_ = 1.0 / (n - 1);
  const double h = grid->h_;
  grid->mask_.assign(count, 1);
  grid->mask_.back() = 0;
  grid->weights_.resize(count);
  grid->weights_[0] = pi * h * h / 4.0;
  for (std::size_t i = 1; i + 1 < count; ++i) grid->weights_[i] = 2.0 * pi * grid->x(i) * h;
  grid->weights_.back() = pi * (h - h * h / 4.0);

  // Finite volumes on annuli: the flux through r_{i+1/2} is
  // 2 pi r_{i+1/2} (u_{i+1} - u_i) / h. At the origin the cell is the disc of
  // radius h/2, giving -Delta u(0) ~ 4 (u_0 - u_1) / h^2, the symmetric limit
  // of (1/r)(r u')' under u'(0) = 0.
  grid->diag_.assign(count, 0.0);
  std::vector<std::vector<StencilEntry>> rows(count);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    grid->add_coupling(i, i + 1, 2.0 * pi * (static_cast<double>(i) + 0.5), rows);
  }
  grid->finalize(rows);
  return grid;
}

GridPtr build_disc(int n) {
  if (n < 3) throw ArgumentError("build_disc: n must be >= 3");
  std::shared_ptr<Grid> grid(new Grid());
  const auto side = static_cast<std::size_t>(n);
  const std::size_t count = side * side;
  grid->kind_ = GridKind::Disc2D;
  grid->n_ = n;
  grid->h_ = 2.0 / (n - 1);
  const double h = grid->h_;
  grid->mask_.assign(count, 0);
  grid->weights_.assign(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double xi = grid->x(i);
    const double yi = grid->y(i);
    if (xi * xi + yi * yi < 1.0) {
      grid->mask_[i] = 1;
      grid->weights_[i] = h * h;
    }
  }
  // 5-point Laplacian times h^2: unit conductance per edge.
  grid->diag_.assign(count, 0.0);
  std::vector<std::vector<StencilEntry>> rows(count);
  for (std::size_t iy = 0; iy < side; ++iy) {
    for (std::size_t ix = 0; ix < side; ++ix) {
      const std::size_t i = iy * side + ix;
      if (ix + 1 < side) grid->add_coupling(i, i + 1, 1.0, rows);
      if (iy + 1 < side) grid->add_coupling(i, i + side, 1.0, rows);
    }
  }
  grid->finalize(rows);
  return grid;
}

Field::Field(GridPtr grid, double fill) : grid_(std::move(grid)) {
  if (!grid_) throw ArgumentError("Field: null grid");
  values_.assign(grid_->size(), fill);
}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ArgumentError("Field: null grid");
  if (values_.size() != grid_->size()) throw GridMismatch("Field: value count does not match the grid");
}

Field Field::from_function(GridPtr grid, const std::function<double(double, double)>& fn) {
  Field f(std::move(grid));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(f.grid().x(i), f.grid().y(i));
  return f;
}

Field Field::interior_from_function(GridPtr grid, const std::function<double(double, double)>& fn) {
  Field f(std::move(grid));
  for (std::size_t i : f.grid().interior_nodes()) f[i] = fn(f.grid().x(i), f.grid().y(i));
  return f;
}

void require_same_grid(const Grid& grid, const Field& field) {
  if (!field.grid_ptr() || !grid.same_as(field.grid()) || field.size() != grid.size()) {
    throw GridMismatch("field does not live on this grid");
  }
}

double integrate(const Grid& grid, const Field& field) {
  require_same_grid(grid, field);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weight(i) * field[i];
  return acc;
}

double integrate_interior(const Grid& grid, const Field& field) {
  require_same_grid(grid, field);
  double acc = 0.0;
  for (std::size_t i : grid.interior_nodes()) acc += grid.weight(i) * field[i];
  return acc;
}

double total_variation(const Grid& grid, const Field& field) {
  require_same_grid(grid, field);
  double tv = 0.0;
  if (grid.kind() == GridKind::Radial) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (!grid.interior(i) || !grid.interior(i + 1)) continue;
      const double r_mid = grid.spacing() * (static_cast<double>(i) + 0.5);
      tv += 2.0 * pi * r_mid * std::abs(field[i + 1] - field[i]);
    }
    return tv;
  }
  const auto side = static_cast<std::size_t>(grid.n());
  for (std::size_t i : grid.interior_nodes()) {
    const std::size_t ix = i % side;
    if (ix + 1 < side && grid.interior(i + 1)) tv += std::abs(field[i + 1] - field[i]);
    if (i + side < grid.size() && grid.interior(i + side)) tv += std::abs(field[i + side] - field[i]);
  }
  return tv * grid.spacing();
}

}  // namespace optpot
