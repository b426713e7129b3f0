#include "eulerkin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eulerkin {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

void write_table_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw InternalError("write_table_csv: ragged row in '" + path.string() + "'");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i]))
        throw InternalError("write_table_csv: non-finite value in '" + path.string() + "'");
      out << (i ? "," : "") << fmt(row[i]);
    }
    out << "\n";
  }
}

Table read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV '" + path.string() + "'");
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        std::ostringstream os;
        os << path.string() << ":" << lineno << ": bad number '" << cell << "'";
        throw ConfigError(os.str());
      }
    }
    if (row.size() != t.header.size()) {
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": expected " << t.header.size() << " columns, got "
         << row.size();
      throw ConfigError(os.str());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_snapshot_csv(const std::filesystem::path& path, const ConservedField& f,
                        const Grid1D& grid, double rho_floor) {
  Table t;
  t.header = {"x", "rho", "m", "lambda1", "lambda2"};
  t.rows.reserve(f.size());
  for (int i = 0; i < f.size(); ++i) {
    double l1 = 0.0, l2 = 0.0;
    if (f.rho[i] > rho_floor) {
      const auto inv = riemann_invariants(f.rho[i], f.m[i], rho_floor);
      l1 = inv.lambda1;
      l2 = inv.lambda2;
    }
    t.rows.push_back({grid.center(i), f.rho[i], f.m[i], l1, l2});
  }
  write_table_csv(path, t);
}

SnapshotData read_snapshot_csv(const std::filesystem::path& path) {
  const Table t = read_table_csv(path);
  for (const char* col : {"x", "rho", "m", "lambda1", "lambda2"})
    if (t.column(col) < 0)
      throw ConfigError("snapshot CSV '" + path.string() + "' lacks column '" + col + "'");
  const int n = static_cast<int>(t.rows.size());
  SnapshotData d;
  d.x.resize(n);
  d.rho.resize(n);
  d.m.resize(n);
  d.lambda1.resize(n);
  d.lambda2.resize(n);
  const int cx = t.column("x"), cr = t.column("rho"), cm = t.column("m"),
            c1 = t.column("lambda1"), c2 = t.column("lambda2");
  for (int i = 0; i < n; ++i) {
    d.x[i] = t.rows[i][cx];
    d.rho[i] = t.rows[i][cr];
    d.m[i] = t.rows[i][cm];
    d.lambda1[i] = t.rows[i][c1];
    d.lambda2[i] = t.rows[i][c2];
  }
  return d;
}

nlohmann::json audit_summary(const SpaceTimeRecord& rec) {
  nlohmann::json j;
  if (rec.audits.empty()) return j;
  const auto& a0 = rec.audits.front();
  double mass_drift = 0.0, mom_drift = 0.0, min_rho = a0.min_rho;
  double max_l1_drop = 0.0, max_l2_rise = 0.0, min_diss = 0.0, total_diss = 0.0;
  int vacuum_cells = 0;
  for (std::size_t k = 0; k < rec.audits.size(); ++k) {
    const auto& a = rec.audits[k];
    mass_drift = std::max(mass_drift, std::abs(a.mass - a0.mass));
    mom_drift = std::max(mom_drift, std::abs(a.momentum - a0.momentum));
    min_rho = std::min(min_rho, a.min_rho);
    vacuum_cells = std::max(vacuum_cells, a.vacuum_cells);
    total_diss += a.collapse_dissipation;
    min_diss = std::min(min_diss, a.collapse_dissipation);
    if (k > 0) {
      const auto& p = rec.audits[k - 1];
      max_l1_drop = std::max(max_l1_drop, p.min_lambda1 - a.min_lambda1);
      max_l2_rise = std::max(max_l2_rise, a.max_lambda2 - p.max_lambda2);
    }
  }
  j["steps"] = rec.audits.size() - 1;
  j["mass_drift"] = mass_drift;
  j["momentum_drift"] = mom_drift;
  j["min_rho"] = min_rho;
  j["max_vacuum_cells"] = vacuum_cells;
  j["invariant_min_lambda1_worst_drop"] = max_l1_drop;
  j["invariant_max_lambda2_worst_rise"] = max_l2_rise;
  j["total_collapse_dissipation"] = total_diss;
  j["min_step_dissipation"] = min_diss;
  return j;
}

void write_record(const std::filesystem::path& dir, const SpaceTimeRecord& rec,
                  const nlohmann::json* config) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "snapshots");
  nlohmann::json manifest;
  if (config) manifest["config"] = *config;
  manifest["grid"] = {{"x_min", rec.grid.x_min},
                      {"x_max", rec.grid.x_max},
                      {"n_cells", rec.grid.n_cells},
                      {"boundary", to_string(rec.grid.boundary)}};
  manifest["scheme"] = to_string(rec.scheme);
  manifest["cfl"] = rec.cfl;
  manifest["dt"] = rec.dt;
  manifest["velocity_bound"] = rec.velocity_bound;
  manifest["rho_floor"] = rec.rho_floor;
  manifest["times"] = rec.times;
  manifest["audits"] = audit_summary(rec);
  std::vector<std::string> files;
  for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.csv", k);
    write_snapshot_csv(dir / "snapshots" / name, rec.snapshots[k], rec.grid, rec.rho_floor);
    files.push_back(std::string("snapshots/") + name);
  }
  manifest["snapshot_files"] = files;
  write_json(dir / "manifest.json", manifest);
}

void write_dissipation(const std::filesystem::path& csv_path,
                       const std::filesystem::path& json_path, const DissipationField& field) {
  Table t;
  t.header = {"t_bin", "x_bin", "v0", "mass"};
  for (int it = 0; it < field.t_bins(); ++it)
    for (int ix = 0; ix < field.x_bins(); ++ix)
      for (int iv = 0; iv < field.v_bins(); ++iv) {
        const double m = field.at(it, ix, iv);
        if (m != 0.0) t.rows.push_back({field.t_center(it), field.x_center(ix), field.v0[iv], m});
      }
  write_table_csv(csv_path, t);

  nlohmann::json j;
  j["t_edges"] = field.t_edges;
  j["x_edges"] = field.x_edges;
  j["v0"] = std::vector<double>(field.v0.data(), field.v0.data() + field.v0.size());
  j["dv"] = field.dv;
  j["total_mass"] = field.total();
  double min_mass = 0.0;
  for (double v : field.mass) min_mass = std::min(min_mass, v);
  j["min_bin_mass"] = min_mass;
  j["nonempty_bins"] = t.rows.size();
  write_json(json_path, j);
}

Table read_dissipation_csv(const std::filesystem::path& path) {
  Table t = read_table_csv(path);
  for (const char* col : {"t_bin", "x_bin", "v0", "mass"})
    if (t.column(col) < 0)
      throw ConfigError("dissipation CSV '" + path.string() + "' lacks column '" + col + "'");
  return t;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace eulerkin
