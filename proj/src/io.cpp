#include "optpot/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "optpot/errors.hpp"

namespace optpot {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError("csv row " + std::to_string(row) + ": cannot parse '" + s + "'");
  }
  return v;
}

}  // namespace

std::string field_to_csv(const Field& field) {
  const Grid& grid = field.grid();
  const bool radial = grid.kind() == GridKind::Radial;
  std::string out = radial ? "r,value\n" : "x,y,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (radial) {
      out += fmt17(grid.radius(i));
    } else {
      out += fmt17(grid.x(i));
      out += ',';
      out += fmt17(grid.y(i));
    }
    out += ',';
    out += fmt17(field[i]);
    out += '\n';
  }
  return out;
}

Field field_from_csv(const GridPtr& grid, const std::string& text) {
  const bool radial = grid->kind() == GridKind::Radial;
  const std::size_t columns = radial ? 2 : 3;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != (radial ? "r,value" : "x,y,value")) throw IoError("csv: unexpected header '" + line + "'");
  Field field(grid);
  std::size_t row = 0;
  const double tol = 1e-9;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (row >= grid->size()) throw IoError("csv: more rows than grid nodes");
    const auto parts = split(line, ',');
    if (parts.size() != columns) throw IoError("csv row " + std::to_string(row + 1) + ": wrong column count");
    if (radial) {
      if (std::abs(parse_double(parts[0], row + 1) - grid->radius(row)) > tol) {
        throw IoError("csv row " + std::to_string(row + 1) + ": radius does not match the grid");
      }
    } else if (std::abs(parse_double(parts[0], row + 1) - grid->x(row)) > tol ||
               std::abs(parse_double(parts[1], row + 1) - grid->y(row)) > tol) {
      throw IoError("csv row " + std::to_string(row + 1) + ": coordinates do not match the grid");
    }
    field[row] = parse_double(parts.back(), row + 1);
    ++row;
  }
  if (row != grid->size()) throw IoError("csv: expected " + std::to_string(grid->size()) + " rows");
  return field;
}

void write_field_csv(const std::filesystem::path& path, const Field& field) { write_text(path, field_to_csv(field)); }

Field read_field_csv(const GridPtr& grid, const std::filesystem::path& path) {
  return field_from_csv(grid, read_text(path));
}

std::string field_to_pgm(const Field& field, PgmScale* scale) {
  const Grid& grid = field.grid();
  PgmScale s{field[0], field[0]};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.min = std::min(s.min, field[i]);
    s.max = std::max(s.max, field[i]);
  }
  if (scale) *scale = s;
  const double span = s.max - s.min;
  auto level = [&](double v) {
    if (!(span > 0.0)) return 0;
    return static_cast<int>(std::lround(255.0 * (v - s.min) / span));
  };

  const int n = grid.n();
  const int side = grid.kind() == GridKind::Radial ? 2 * n - 1 : n;
  std::ostringstream out;
  out << "P2\n# min " << fmt17(s.min) << " max " << fmt17(s.max) << "\n" << side << ' ' << side << "\n255\n";
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      double v = 0.0;
      if (grid.kind() == GridKind::Radial) {
        const double h = grid.spacing();
        const double x = (col - (n - 1)) * h;
        const double y = ((n - 1) - row) * h;
        const double t = std::sqrt(x * x + y * y) / h;
        if (t >= n - 1) {
          v = field[static_cast<std::size_t>(n - 1)];
        } else {
          const auto i = static_cast<std::size_t>(t);
          const double frac = t - static_cast<double>(i);
          v = (1.0 - frac) * field[i] + frac * field[i + 1];
        }
      } else {
        // Top row is the largest y.
        v = field[static_cast<std::size_t>((n - 1 - row) * n + col)];
      }
      out << level(v) << (col + 1 == side ? '\n' : ' ');
    }
  }
  return out.str();
}

PgmScale write_field_pgm(const std::filesystem::path& path, const Field& field) {
  PgmScale scale;
  write_text(path, field_to_pgm(field, &scale));
  return scale;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace optpot
