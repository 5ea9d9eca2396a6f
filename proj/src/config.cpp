#include "optpot/config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "json.hpp"

#include "optpot/errors.hpp"
#include "optpot/io.hpp"

namespace optpot {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

double get_number(const json& j, const char* key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + ": must be finite");
  return d;
}

int get_int(const json& j, const char* key, const std::string& where, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

bool get_bool(const json& j, const char* key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& where, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

FieldSpec parse_field(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "value", "amplitude", "path"});
  FieldSpec spec;
  spec.kind = get_string(j, "kind", where, "constant");
  if (spec.kind == "oscillatory") {
    if (j.contains("value")) throw ConfigError(where + ": oscillatory takes 'amplitude'");
    spec.value = get_number(j, "amplitude", where, 10.0);
  } else {
    if (j.contains("amplitude")) throw ConfigError(where + ": 'amplitude' only applies to oscillatory");
    spec.value = get_number(j, "value", where, 1.0);
  }
  if (spec.kind == "csv") {
    if (!j.contains("path")) throw ConfigError(where + ": csv needs 'path'");
    spec.path = get_string(j, "path", where, "");
  } else if (j.contains("path")) {
    throw ConfigError(where + ": 'path' only applies to csv");
  }
  if (spec.kind != "constant" && spec.kind != "fourballs" && spec.kind != "oscillatory" && spec.kind != "saddle" &&
      spec.kind != "csv") {
    throw ConfigError(where + ": unknown field kind '" + spec.kind + "'");
  }
  return spec;
}

PotentialLaw parse_law(const json& j) {
  check_keys(j, "law", {"kind", "alpha", "beta", "k", "p", "offset"});
  if (!j.contains("kind")) throw ConfigError("law: missing 'kind'");
  LawKind kind;
  try {
    kind = law_kind_from_string(get_string(j, "kind", "law", ""));
  } catch (const Error& e) {
    throw ConfigError(std::string("law: ") + e.what());
  }
  const double alpha = get_number(j, "alpha", "law", 0.0);
  const double beta = get_number(j, "beta", "law", 1.0);
  const double k = get_number(j, "k", "law", 1.0);
  PotentialLaw law;
  try {
    switch (kind) {
      case LawKind::Power:
        if (j.contains("alpha") || j.contains("beta")) throw ConfigError("law: power takes only k and p");
        law = PotentialLaw::power(k, get_number(j, "p", "law", 2.0));
        break;
      case LawKind::Box:
        if (j.contains("k") || j.contains("p")) throw ConfigError("law: box takes only alpha and beta");
        law = PotentialLaw::box(alpha, beta);
        break;
      case LawKind::BoxPlusLinear:
        law = PotentialLaw::box_plus_linear(alpha, beta, k, get_number(j, "p", "law", 1.0));
        break;
      case LawKind::BoxMinusLinear:
        if (j.contains("p")) throw ConfigError("law: box_minus_linear takes no p");
        law = PotentialLaw::box_minus_linear(alpha, beta, k);
        break;
    }
    law.offset = get_number(j, "offset", "law", 0.0);
    law.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("law: ") + e.what());
  }
  return law;
}

}  // namespace

Field make_field(const FieldSpec& spec, const GridPtr& grid, const std::filesystem::path& base_dir) {
  const bool radial = grid->kind() == GridKind::Radial;
  const double v = spec.value;
  if (spec.kind == "constant") {
    return Field::interior_from_function(grid, [v](double, double) { return v; });
  }
  if (spec.kind == "csv") {
    std::filesystem::path p(spec.path);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return read_field_csv(grid, p);
  }
  if (radial) throw ConfigError("field kind '" + spec.kind + "' needs a disc grid");
  if (spec.kind == "fourballs") {
    const double r2 = 0.03;  // (sqrt(3)/10)^2
    return Field::interior_from_function(grid, [v, r2](double x, double y) {
      const double centers[4][2] = {{0.0, 0.5}, {0.0, -0.5}, {0.5, 0.0}, {-0.5, 0.0}};
      double acc = 0.0;
      for (const auto& c : centers) {
        const double dx = x - c[0];
        const double dy = y - c[1];
        if (dx * dx + dy * dy < r2) acc += v;
      }
      return acc;
    });
  }
  if (spec.kind == "oscillatory") {
    return Field::interior_from_function(grid, [v](double x, double y) {
      if (!(std::abs(x) > 1e-10)) return 0.0;
      return v * (x * x + y * y) * std::sin(13.0 * std::atan(std::abs(y / x)));
    });
  }
  if (spec.kind == "saddle") {
    return Field::interior_from_function(grid, [v](double x, double y) { return v * (x * x - y * y); });
  }
  throw ConfigError("unknown field kind '" + spec.kind + "'");
}

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config", {"grid", "law", "cost", "rhs", "opt", "semilinear", "output"});
  RunConfig cfg;
  cfg.base_dir = base_dir;

  if (root.contains("grid")) {
    const json& g = root["grid"];
    check_keys(g, "grid", {"kind", "n"});
    const std::string kind = get_string(g, "kind", "grid", "radial");
    if (kind == "radial") {
      cfg.grid.kind = GridKind::Radial;
    } else if (kind == "disc") {
      cfg.grid.kind = GridKind::Disc2D;
    } else {
      throw ConfigError("grid.kind: expected 'radial' or 'disc'");
    }
    cfg.grid.n = get_int(g, "n", "grid", 129);
    if (cfg.grid.n < 3) throw ConfigError("grid.n must be at least 3");
  }

  if (root.contains("law")) cfg.law = parse_law(root["law"]);

  if (root.contains("cost")) {
    const json& c = root["cost"];
    check_keys(c, "cost", {"kind", "sign", "gamma", "target"});
    const std::string kind = get_string(c, "kind", "cost", "energy");
    if (kind == "linear") {
      cfg.cost.kind = CostIntegrand::Kind::Linear;
      if (c.contains("target") || c.contains("sign")) throw ConfigError("cost: linear takes only 'gamma'");
      if (c.contains("gamma")) cfg.cost.data = parse_field(c["gamma"], "cost.gamma");
    } else if (kind == "tracking") {
      cfg.cost.kind = CostIntegrand::Kind::Tracking;
      if (c.contains("gamma") || c.contains("sign")) throw ConfigError("cost: tracking takes only 'target'");
      if (c.contains("target")) cfg.cost.data = parse_field(c["target"], "cost.target");
    } else if (kind == "energy") {
      cfg.cost.kind = CostIntegrand::Kind::Energy;
      if (c.contains("gamma") || c.contains("target")) throw ConfigError("cost: energy takes only 'sign'");
      cfg.cost.sign = get_int(c, "sign", "cost", 1);
      if (cfg.cost.sign != 1 && cfg.cost.sign != -1) throw ConfigError("cost.sign must be 1 or -1");
    } else {
      throw ConfigError("cost.kind: expected 'linear', 'tracking' or 'energy'");
    }
  }

  if (root.contains("rhs")) cfg.rhs = parse_field(root["rhs"], "rhs");

  if (root.contains("opt")) {
    const json& o = root["opt"];
    check_keys(o, "opt", {"tol", "max_iter", "eps0", "backtrack", "max_halvings", "solver_tol", "m0",
                          "paper_sign_third_example"});
    cfg.opt.tol = get_number(o, "tol", "opt", cfg.opt.tol);
    cfg.opt.max_iter = get_int(o, "max_iter", "opt", cfg.opt.max_iter);
    cfg.opt.eps0 = get_number(o, "eps0", "opt", cfg.opt.eps0);
    cfg.opt.backtrack = get_number(o, "backtrack", "opt", cfg.opt.backtrack);
    cfg.opt.max_halvings = get_int(o, "max_halvings", "opt", cfg.opt.max_halvings);
    cfg.opt.solver_tol = get_number(o, "solver_tol", "opt", cfg.opt.solver_tol);
    cfg.opt.paper_sign_third_example =
        get_bool(o, "paper_sign_third_example", "opt", cfg.opt.paper_sign_third_example);
    if (!(cfg.opt.tol >= 0.0) || cfg.opt.max_iter < 0 || !(cfg.opt.eps0 > 0.0) || !(cfg.opt.backtrack > 0.0) ||
        !(cfg.opt.backtrack < 1.0) || cfg.opt.max_halvings < 0 || !(cfg.opt.solver_tol > 0.0)) {
      throw ConfigError("opt: values out of range");
    }
    if (o.contains("m0")) {
      const json& m0 = o["m0"];
      if (m0.is_number()) {
        cfg.m0 = m0.get<double>();
      } else if (m0.is_string() && (m0 == "midpoint" || m0 == "zero")) {
        cfg.m0 = m0.get<std::string>();
      } else {
        throw ConfigError("opt.m0: expected 'midpoint', 'zero' or a number");
      }
    }
  }
  if (std::holds_alternative<std::string>(cfg.m0) && std::get<std::string>(cfg.m0) == "midpoint" &&
      !cfg.law.bounded_domain()) {
    cfg.m0 = std::string("zero");
  }

  if (root.contains("semilinear")) {
    const json& s = root["semilinear"];
    check_keys(s, "semilinear", {"graph", "tol", "max_sweeps", "warm_start"});
    cfg.semilinear.tol = get_number(s, "tol", "semilinear", cfg.semilinear.tol);
    cfg.semilinear.max_sweeps = get_int(s, "max_sweeps", "semilinear", cfg.semilinear.max_sweeps);
    cfg.semilinear.warm_start = get_bool(s, "warm_start", "semilinear", cfg.semilinear.warm_start);
    if (!(cfg.semilinear.tol >= 0.0) || cfg.semilinear.max_sweeps < 1) {
      throw ConfigError("semilinear: values out of range");
    }
    if (s.contains("graph")) {
      const json& g = s["graph"];
      check_keys(g, "semilinear.graph", {"kind", "c", "threshold", "height"});
      GraphConfig& gc = cfg.semilinear.graph;
      gc.kind = get_string(g, "kind", "semilinear.graph", gc.kind);
      gc.c = get_number(g, "c", "semilinear.graph", gc.c);
      gc.threshold = get_number(g, "threshold", "semilinear.graph", gc.threshold);
      gc.height = get_number(g, "height", "semilinear.graph", gc.height);
      if (gc.kind != "auxiliary" && gc.kind != "zero" && gc.kind != "linear" && gc.kind != "cubic" &&
          gc.kind != "step") {
        throw ConfigError("semilinear.graph.kind: unknown graph '" + gc.kind + "'");
      }
      if ((gc.kind == "linear" || gc.kind == "cubic") && !(gc.c >= 0.0)) {
        throw ConfigError("semilinear.graph.c must be non-negative");
      }
      if (gc.kind == "step" && !(gc.height >= 0.0)) throw ConfigError("semilinear.graph.height must be non-negative");
    }
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, "output", {"dir", "emit_pgm"});
    cfg.output.dir = get_string(o, "dir", "output", cfg.output.dir);
    cfg.output.emit_pgm = get_bool(o, "emit_pgm", "output", cfg.output.emit_pgm);
  }

  // Coordinate-dependent fields need the disc grid.
  auto check_grid = [&](const FieldSpec& spec, const char* where) {
    const bool planar = spec.kind == "fourballs" || spec.kind == "oscillatory" || spec.kind == "saddle";
    if (planar && cfg.grid.kind == GridKind::Radial) {
      throw ConfigError(std::string(where) + ": field kind '" + spec.kind + "' needs a disc grid");
    }
  };
  check_grid(cfg.rhs, "rhs");
  if (cfg.cost.kind != CostIntegrand::Kind::Energy) check_grid(cfg.cost.data, "cost");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.parent_path());
}

GridPtr make_grid(const RunConfig& config) {
  return config.grid.kind == GridKind::Radial ? build_radial(config.grid.n) : build_disc(config.grid.n);
}

CostIntegrand make_cost(const RunConfig& config, const GridPtr& grid, const Field& f) {
  switch (config.cost.kind) {
    case CostIntegrand::Kind::Linear:
      return CostIntegrand::linear(make_field(config.cost.data, grid, config.base_dir));
    case CostIntegrand::Kind::Tracking:
      return CostIntegrand::tracking(make_field(config.cost.data, grid, config.base_dir));
    case CostIntegrand::Kind::Energy:
      return CostIntegrand::energy(config.cost.sign, f);
  }
  throw ConfigError("unknown cost kind");
}

Field make_initial_potential(const RunConfig& config, const GridPtr& grid) {
  if (std::holds_alternative<double>(config.m0)) {
    const double v = std::get<double>(config.m0);
    return Field::interior_from_function(grid, [v](double, double) { return v; });
  }
  if (std::get<std::string>(config.m0) == "zero") return Field(grid);
  return default_initial_potential(grid, config.law);
}

MonotoneGraph make_graph(const RunConfig& config) {
  const GraphConfig& g = config.semilinear.graph;
  if (g.kind == "zero") return MonotoneGraph::zero();
  if (g.kind == "linear") return MonotoneGraph::linear(g.c);
  if (g.kind == "cubic") return MonotoneGraph::cubic(g.c);
  if (g.kind == "step") return MonotoneGraph::step(g.threshold, g.height);
  return make_auxiliary_graph(config.law);
}

SemilinearOptions make_semilinear_options(const RunConfig& config) {
  SemilinearOptions o;
  o.tol = config.semilinear.tol;
  o.max_sweeps = config.semilinear.max_sweeps;
  o.warm_start = config.semilinear.warm_start;
  return o;
}

}  // namespace optpot
