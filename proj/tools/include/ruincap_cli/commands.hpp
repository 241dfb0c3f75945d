#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ruincap/curve_table.hpp"
#include "ruincap_cli/config.hpp"

namespace ruincap::cli {

enum ExitCode { exit_ok = 0, exit_usage = 2, exit_numeric = 3, exit_incompatible = 4 };

// Table plus the worst outcome met while building it. Columns whose method
// cannot be applied to the model are emitted as NA and set `incompatible`.
struct CommandOutput {
    CurveTable table;
    bool incompatible = false;
};

// Constants table: one row per model, values rendered with 4 decimals.
struct ConstantsRow {
    std::string name;
    std::string t_law;
    std::string y_law;
    std::vector<std::string> cells;  // aligned with constants_header() after the first three
};

std::vector<std::string> constants_header();
std::vector<ConstantsRow> build_constants(const RunConfig& cfg);
void write_constants(std::ostream& os, const RunConfig& cfg, const std::vector<ConstantsRow>& rows,
                     const std::string& command);

// Capital curves for cfg.kinds x cfg.methods on cfg.grid.
CommandOutput build_capital(const RunConfig& cfg);

// Ruin probabilities at capital cfg.u for cfg.methods on cfg.grid.
CommandOutput build_ruinprob(const RunConfig& cfg);

// Metadata common to every emitted file: tool version, command and config echo.
void stamp(CurveTable& table, const RunConfig& cfg, const std::string& command);

// Write to cfg.output_path or, when empty, to `fallback`.
void emit(const CurveTable& table, const RunConfig& cfg, std::ostream& fallback);

// Entry points used by the executable; return the process exit code.
int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_capital(const RunConfig& cfg, std::ostream& out);
int cmd_ruinprob(const RunConfig& cfg, std::ostream& out);

}  // namespace ruincap::cli
