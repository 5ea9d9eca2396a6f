#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace optpot {

enum class GridKind { Radial, Disc2D };

/// One off-diagonal entry of the stiffness matrix.
struct StencilEntry {
  std::size_t col;
  double value;
};

/// Discretization of the unit disc.
///
/// Radial: nodes r_i = i h on [0, 1], h = 1/(n-1); the last node carries the
/// Dirichlet condition. Quadrature weights are the exact areas of the control
/// annuli around each node, so they sum to pi.
///
/// Disc2D: uniform n x n nodes on [-1, 1]^2, h = 2/(n-1), node index
/// iy*n + ix. Nodes strictly inside the unit circle are unknowns with weight
/// h^2; all others hold the Dirichlet value 0 and weight 0.
///
/// Both grids carry the symmetric stiffness matrix K of -Delta scaled by the
/// weights (K u = W (-Delta_h u)), which is an M-matrix on interior nodes.
class Grid {
 public:
  GridKind kind() const { return kind_; }
  int n() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return weights_.size(); }
  std::size_t interior_count() const { return interior_nodes_.size(); }

  bool interior(std::size_t i) const { return mask_[i] != 0; }
  std::span<const std::size_t> interior_nodes() const { return interior_nodes_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Cartesian coordinates; Radial nodes sit on the positive x axis.
  double x(std::size_t i) const;
  double y(std::size_t i) const;
  double radius(std::size_t i) const;

  double stiffness_diagonal(std::size_t i) const { return diag_[i]; }
  /// Couplings of interior node i to interior neighbours.
  std::span<const StencilEntry> stiffness_row(std::size_t i) const {
    return {entries_.data() + row_start_[i], entries_.data() + row_start_[i + 1]};
  }

  /// Node nearest to the origin (exactly the origin when it is a node).
  std::size_t center_node() const;

  /// (K v)_i on interior nodes, 0 elsewhere.
  std::vector<double> apply_stiffness(std::span<const double> v) const;

  /// Same kind and resolution.
  bool same_as(const Grid& other) const { return kind_ == other.kind_ && n_ == other.n_; }

 private:
  friend std::shared_ptr<const Grid> build_radial(int n);
  friend std::shared_ptr<const Grid> build_disc(int n);

  Grid() = default;
  void add_coupling(std::size_t i, std::size_t j, double value, std::vector<std::vector<StencilEntry>>& rows);
  void finalize(std::vector<std::vector<StencilEntry>>& rows);

  GridKind kind_ = GridKind::Radial;
  int n_ = 0;
  double h_ = 0.0;
  std::vector<char> mask_;
  std::vector<std::size_t> interior_nodes_;
  std::vector<double> weights_;
  std::vector<double> diag_;
  std::vector<std::size_t> row_start_;
  std::vector<StencilEntry> entries_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_radial(int n);
GridPtr build_disc(int n);

/// Nodal values on a grid.
class Field {
 public:
  Field() = default;
  explicit Field(GridPtr grid, double fill = 0.0);
  Field(GridPtr grid, std::vector<double> values);

  /// Samples fn(x, y) on every node.
  static Field from_function(GridPtr grid, const std::function<double(double, double)>& fn);
  /// Samples fn(x, y) on interior nodes, 0 elsewhere.
  static Field interior_from_function(GridPtr grid, const std::function<double(double, double)>& fn);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& data() const { return values_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws GridMismatch unless the field lives on a grid equal to `grid`.
void require_same_grid(const Grid& grid, const Field& field);

/// Sum of weights * values over all nodes.
double integrate(const Grid& grid, const Field& field);
/// Sum of weights * values over interior nodes only.
double integrate_interior(const Grid& grid, const Field& field);

/// Anisotropic total variation over edges joining two interior nodes.
double total_variation(const Grid& grid, const Field& field);

}  // namespace optpot
