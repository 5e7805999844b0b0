#include "lowdisc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lowdisc {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& detail) {
  throw io_error(path + ":" + std::to_string(line) + ": " + detail);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open for reading");
  return in;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_pointset_text(const std::string& path, const PointSet& ps) {
  ps.validate();
  std::ofstream out = open_out(path);
  out << ps.n << ' ' << ps.dim << '\n';
  for (int i = 0; i < ps.n; ++i) {
    for (int k = 0; k < ps.dim; ++k) {
      if (k) out << ' ';
      out << format_g17(ps.at(i, k));
    }
    out << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

PointSet read_pointset_text(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "missing header line 'n d'");
  std::istringstream head(line);
  int n = 0, d = 0;
  if (!(head >> n >> d)) fail(path, 1, "malformed header, expected 'n d'");
  std::string extra;
  if (head >> extra) fail(path, 1, "trailing tokens after 'n d'");
  if (n < 1) fail(path, 1, "n must be >= 1");
  if (d < 1) fail(path, 1, "d must be >= 1");
  PointSet ps;
  ps.dim = d;
  ps.n = n;
  ps.coords.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) fail(path, i + 2, "unexpected end of file");
    std::istringstream row(line);
    for (int k = 0; k < d; ++k) {
      double v;
      if (!(row >> v)) fail(path, i + 2, "malformed coordinate");
      ps.at(i, k) = v;
    }
    if (row >> extra) fail(path, i + 2, "trailing tokens after coordinates");
  }
  ps.provenance = "external";
  try {
    ps.validate();
  } catch (const invalid_input& e) {
    throw io_error(path + ": " + e.what());
  }
  return ps;
}

void write_permutation_text(const std::string& path, const Permutation& p) {
  p.validate();
  std::ofstream out = open_out(path);
  out << p.n << '\n';
  for (int i = 1; i <= p.n; ++i) {
    if (i > 1) out << ' ';
    out << p(i);
  }
  out << '\n';
  if (!out) throw io_error(path + ": write failed");
}

Permutation read_permutation_text(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "missing header line 'n'");
  std::istringstream head(line);
  int n = 0;
  if (!(head >> n) || n < 1) fail(path, 1, "malformed permutation size");
  if (!std::getline(in, line)) fail(path, 2, "missing permutation values");
  std::istringstream row(line);
  Permutation p;
  p.n = n;
  p.map.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!(row >> p.map[static_cast<std::size_t>(i)]))
      fail(path, 2, "malformed permutation value");
  }
  std::string extra;
  if (row >> extra) fail(path, 2, "trailing tokens after permutation");
  try {
    p.validate();
  } catch (const invalid_input& e) {
    throw io_error(path + ": " + e.what());
  }
  return p;
}

void write_heatmap_csv(const std::string& path, const LocalDiscrepancyMap& map) {
  std::ofstream out = open_out(path);
  out << "i,j,x,y,open,closed\n";
  std::size_t ny = map.grid_y.size();
  for (std::size_t ix = 0; ix < map.grid_x.size(); ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      out << ix << ',' << iy << ',' << format_g17(map.grid_x[ix]) << ','
          << format_g17(map.grid_y[iy]) << ',' << format_g17(map.open[ix * ny + iy])
          << ',' << format_g17(map.closed[ix * ny + iy]) << '\n';
    }
  }
  if (!out) throw io_error(path + ": write failed");
}

LocalDiscrepancyMap read_heatmap_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "missing header");
  if (line != "i,j,x,y,open,closed") fail(path, 1, "unexpected header");
  struct Row {
    int i, j;
    double x, y, open, closed;
  };
  std::vector<Row> rows;
  int lineno = 1;
  int max_i = -1, max_j = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Row r;
    char c1, c2, c3, c4, c5;
    std::istringstream s(line);
    if (!(s >> r.i >> c1 >> r.j >> c2 >> r.x >> c3 >> r.y >> c4 >> r.open >> c5 >>
          r.closed) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',')
      fail(path, lineno, "malformed row");
    rows.push_back(r);
    max_i = std::max(max_i, r.i);
    max_j = std::max(max_j, r.j);
  }
  if (rows.empty()) fail(path, lineno, "no data rows");
  LocalDiscrepancyMap map;
  std::size_t nx = static_cast<std::size_t>(max_i) + 1;
  std::size_t ny = static_cast<std::size_t>(max_j) + 1;
  if (rows.size() != nx * ny) fail(path, lineno, "incomplete anchor grid");
  map.grid_x.assign(nx, 0.0);
  map.grid_y.assign(ny, 0.0);
  map.open.assign(nx * ny, 0.0);
  map.closed.assign(nx * ny, 0.0);
  for (const Row& r : rows) {
    std::size_t ix = static_cast<std::size_t>(r.i);
    std::size_t iy = static_cast<std::size_t>(r.j);
    map.grid_x[ix] = r.x;
    map.grid_y[iy] = r.y;
    map.open[ix * ny + iy] = r.open;
    map.closed[ix * ny + iy] = r.closed;
  }
  return map;
}

std::string result_to_json(const OptimizationProblem& prob,
                           const OptimizationResult& res) {
  nlohmann::ordered_json j;
  j["n"] = prob.n;
  j["dim"] = prob.dim;
  if (prob.dim == 2) {
    j["permutation"] = prob.perm.map;
  } else {
    j["permutation"] = prob.perm3.sigma.map;
    j["tau"] = prob.perm3.tau.map;
  }
  j["epsilon"] = prob.epsilon;
  j["f"] = res.f;
  j["exact_discrepancy"] = res.exact;
  j["status"] = to_string(res.status);
  j["iterations"] = res.iterations;
  j["restarts_used"] = res.restarts_used;
  j["wall_time_seconds"] = res.wall_time_seconds;
  nlohmann::ordered_json coords;
  coords["x"] = res.x;
  coords["y"] = res.y;
  if (prob.dim == 3) coords["z"] = res.z;
  j["coordinates"] = coords;
  j["trace"] = res.trace;
  return j.dump(2);
}

void write_result_json(const std::string& path, const OptimizationProblem& prob,
                       const OptimizationResult& res) {
  std::ofstream out = open_out(path);
  out << result_to_json(prob, res) << '\n';
  if (!out) throw io_error(path + ": write failed");
}

void write_curves_csv(const std::string& path, int n_max) {
  if (n_max < 1) throw invalid_input("curves: n_max must be >= 1");
  std::ofstream out = open_out(path);
  out << "n,0.2223*ln(n)/n,0.3*ln(n)/n\n";
  for (int n = 1; n <= n_max; ++n) {
    double l = std::log(static_cast<double>(n));
    out << n << ',' << format_g17(0.2223 * l / n) << ',' << format_g17(0.3 * l / n)
        << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

}  // namespace lowdisc
