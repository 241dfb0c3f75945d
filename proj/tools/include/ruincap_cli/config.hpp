#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruincap/model.hpp"
#include "ruincap/montecarlo.hpp"

namespace ruincap::cli {

// Bad configuration or flags; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridSpec {
    double start = 0.0;
    double stop = 2.5;
    double step = 0.05;

    // start, start + step, ..., up to stop (inclusive within rounding).
    std::vector<double> values() const;
};

struct NamedModel {
    std::string name;
    RiskModel model;
};

struct RunConfig {
    std::vector<NamedModel> models;  // first entry is "the" model for capital/ruinprob
    double alpha = 0.05;
    double t = 200.0;
    double u = 50.0;  // capital level for ruinprob
    GridSpec grid{};
    std::vector<std::string> methods{"exact"};
    std::vector<std::string> kinds{"var", "nonruin"};
    mc::SimConfig sim{};
    std::string output_path;  // file for capital/ruinprob/constants, directory for reproduce

    const RiskModel& model() const;
};

// Command-line overrides; unset fields leave the config untouched.
struct Overrides {
    std::optional<double> alpha, t, u, c_start, c_stop, c_step;
    std::optional<std::string> methods, kinds, t_law, y_law, out;
    std::optional<std::uint64_t> paths, seed, stream_count;
    std::optional<unsigned> threads;
};

// "exponential:rate=1", "pareto:a=4,b=0.35", "erlang:rate=6,shape=4", ...
Distribution parse_law(const std::string& spec);

// Structured JSON document; see README for the schema.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

void apply(RunConfig& cfg, const Overrides& o);

// Only the fields present in a config document, as overrides. Used by
// reproduce, whose presets fix the model: a model entry is a usage error.
Overrides overrides_from_config(const std::string& json_text);

// Validates ranges and names; throws UsageError naming the field.
void validate(const RunConfig& cfg);

// Canonical single-line JSON echo (embedded in output metadata).
std::string to_json(const RunConfig& cfg);

std::vector<std::string> split_list(const std::string& s);

}  // namespace ruincap::cli
