#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "optpot/control.hpp"
#include "optpot/convex.hpp"
#include "optpot/cost.hpp"
#include "optpot/grid.hpp"
#include "optpot/semilinear.hpp"

namespace optpot {

/// A field given by name: "constant" (value), "fourballs" (value inside the
/// four balls of radius sqrt(3)/10 centred at (0, +-0.5), (+-0.5, 0)),
/// "oscillatory" (amplitude (x^2+y^2) sin(13 atan|y/x|) for |x| > 1e-10),
/// "saddle" (value (x^2 - y^2)) or "csv" (path, relative to the config file).
struct FieldSpec {
  std::string kind = "constant";
  double value = 1.0;
  std::string path;
};

/// Evaluates a spec on the interior nodes. Throws ConfigError for kinds that
/// need two coordinates on a radial grid.
Field make_field(const FieldSpec& spec, const GridPtr& grid, const std::filesystem::path& base_dir = {});

struct GridConfig {
  GridKind kind = GridKind::Radial;
  int n = 129;
};

struct CostConfig {
  CostIntegrand::Kind kind = CostIntegrand::Kind::Energy;
  int sign = 1;
  /// gamma for Linear, target for Tracking; unused for Energy.
  FieldSpec data;
};

struct GraphConfig {
  /// "auxiliary" (built from the law), "zero", "linear", "cubic" or "step".
  std::string kind = "auxiliary";
  double c = 1.0;
  double threshold = 0.0;
  double height = 1.0;
};

struct SemilinearConfig {
  GraphConfig graph;
  double tol = 1e-14;
  int max_sweeps = 200000;
  bool warm_start = true;
};

struct OutputConfig {
  std::string dir = "out";
  bool emit_pgm = false;
};

struct RunConfig {
  GridConfig grid;
  PotentialLaw law = PotentialLaw::box(0.0, 1.0);
  CostConfig cost;
  FieldSpec rhs;
  OptimizeOptions opt;
  /// "midpoint", "zero" or a constant.
  std::variant<std::string, double> m0 = std::string("midpoint");
  SemilinearConfig semilinear;
  OutputConfig output;
  /// Directory of the config file; csv paths resolve against it.
  std::filesystem::path base_dir;
};

/// Parses and validates a JSON config. Unknown keys, wrong types and invalid
/// values raise ConfigError.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

GridPtr make_grid(const RunConfig& config);
CostIntegrand make_cost(const RunConfig& config, const GridPtr& grid, const Field& f);
Field make_initial_potential(const RunConfig& config, const GridPtr& grid);
MonotoneGraph make_graph(const RunConfig& config);
SemilinearOptions make_semilinear_options(const RunConfig& config);

}  // namespace optpot
