#ifndef EULERKIN_IO_HPP
#define EULERKIN_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulerkin/dissipation.hpp"
#include "eulerkin/solver.hpp"

namespace eulerkin {

/// Plain numeric CSV with a header row; all artifact CSVs are tables.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  ///< -1 when absent
};

/// Writes with round-trip precision; NaN/Inf anywhere is an error.
void write_table_csv(const std::filesystem::path& path, const Table& table);
Table read_table_csv(const std::filesystem::path& path);

/// Snapshot CSV: x, rho, m, lambda1, lambda2 (vacuum cells carry 0 for both
/// invariants).
void write_snapshot_csv(const std::filesystem::path& path, const ConservedField& f,
                        const Grid1D& grid, double rho_floor = kDefaultRhoFloor);
struct SnapshotData {
  Eigen::ArrayXd x, rho, m, lambda1, lambda2;
};
SnapshotData read_snapshot_csv(const std::filesystem::path& path);

/// Record directory: snapshots/snap_NNNNNN.csv + manifest.json with grid,
/// times, scheme metadata, audit summaries and (when given) the config echo.
void write_record(const std::filesystem::path& dir, const SpaceTimeRecord& rec,
                  const nlohmann::json* config = nullptr);
nlohmann::json audit_summary(const SpaceTimeRecord& rec);

/// Dissipation export: CSV rows t_bin, x_bin, v0, mass (nonempty bins only)
/// plus a JSON summary with the binning metadata.
void write_dissipation(const std::filesystem::path& csv_path,
                       const std::filesystem::path& json_path, const DissipationField& field);
Table read_dissipation_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace eulerkin

#endif
