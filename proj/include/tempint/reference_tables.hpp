#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tempint/harness.hpp"

namespace tempint {

/// One published number and the value recomputed for it.
struct TableCell {
  std::string table;  // "5", "7" or "10"
  std::string model;
  std::string grid;
  std::string metric;  // "sse", "eps_max" or "order"
  double published{0.0};
  double computed{0.0};
  double rel_tol{0.0};
  bool pass{false};
  std::string note;
};

struct TableRun {
  std::vector<Comparison> comparisons;  // tables 5, 7, 10 (narrow), 10 (full)
  std::vector<TableCell> cells;

  bool all_pass() const;
};

/// Recomputes the accuracy tables for the bundled approximants and the
/// literature models and checks each cell against its published value:
/// bundled approximants 5% on |eps|max and 10% on SSE, J/O/SY 2%, every other
/// literature model 5%. A model that fails to load or evaluate fails its cells.
TableRun run_reference_tables(const std::filesystem::path& coeff_dir = {}, const OracleConfig& cfg = {});

std::string render_tables_text(const TableRun& run);
/// Columns: table,model,grid,metric,published,computed,rel_dev,rel_tol,status
std::string render_table_csv(const TableRun& run, const std::string& table);

}  // namespace tempint
