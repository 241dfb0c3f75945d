#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ruincap/curve_table.hpp"
#include "ruincap_cli/config.hpp"

namespace ruincap::cli {

// A reference value printed on a figure and what the library computes for it.
struct Check {
    std::string name;
    double reference = 0.0;
    std::optional<double> achieved;
    double tolerance = 0.0;
    bool pass = false;
};

// Reference values that are recorded but deliberately not recomputed.
struct Unreproduced {
    std::string name;
    double reference = 0.0;
    std::string reason;
};

struct PresetFile {
    std::string name;     // file name inside the output directory
    std::string content;  // CSV text
};

struct PresetResult {
    std::string id;
    std::string description;
    RunConfig config;
    std::vector<PresetFile> files;
    std::vector<Check> checks;
    std::vector<Unreproduced> unreproduced;
    std::vector<std::string> notes;
    bool incompatible = false;
};

std::vector<std::string> preset_ids();

// Default configuration of a preset (before overrides).
RunConfig preset_config(const std::string& id);

// Runs a preset with the given overrides applied to its default
// configuration. Throws UsageError for an unknown id.
PresetResult run_preset(const std::string& id, const Overrides& overrides);

// Sidecar document listing the files, checks and notes of a run.
std::string sidecar_json(const PresetResult& r);

// Writes <file>.csv entries and <id>.json into `dir` (created if missing).
void write_preset(const PresetResult& r, const std::string& dir);

int cmd_reproduce(const std::string& id, const Overrides& overrides, std::ostream& log);

}  // namespace ruincap::cli
