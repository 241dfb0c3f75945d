#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ruincap/curve_table.hpp"
#include "ruincap/model.hpp"
#include "ruincap/probability.hpp"
#include "ruincap/rng.hpp"

namespace ruincap::mc {

struct SimConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 20240601;
    double t = 1.0;
    std::uint64_t stream_count = 64;  // path i uses stream i mod K, index i div K
    unsigned threads = 0;             // 0: hardware concurrency; does not affect results
};

// Pathwise statistics on [0, t].
struct PathStats {
    double sup_deficit;       // max(0, max over claim epochs of V_s - c s)
    double terminal_deficit;  // V_t - c t
};

struct Estimate {
    double point = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

// One trajectory. Throws Unsupported when a law cannot be sampled.
PathStats simulate_path(const RiskModel& m, double c, double t, RandomStream& rng);

// Fraction of paths with sup_deficit > u, with binomial standard error and
// normal 95% interval.
Estimate estimate_ruin_prob(const RiskModel& m, double u, double c, const SimConfig& cfg);

struct CapitalEstimates {
    Estimate var_cap;      // (1 - alpha)-quantile of terminal_deficit, clamped at 0
    Estimate nonruin_cap;  // (1 - alpha)-quantile of sup_deficit, clamped at 0
    std::vector<std::string> warnings;
};

// Quantile at order statistic ceil((1 - alpha) N); the 95% interval comes
// from binomial order-statistic ranks.
CapitalEstimates estimate_capitals(const RiskModel& m, Probability alpha, double c, const SimConfig& cfg);

struct CurvePoint {
    double c;
    Estimate var_cap;
    Estimate nonruin_cap;
    std::optional<Estimate> ruin_prob;  // present when a capital level u was given
};

struct SimulatedCurve {
    std::vector<CurvePoint> points;
    std::vector<std::string> warnings;
};

// Every grid point reuses the same paths (common random numbers). When `u`
// is given the ruin probability at that capital is estimated as well.
SimulatedCurve simulate_curve(const RiskModel& m, Probability alpha, const std::vector<double>& c_grid,
                              const SimConfig& cfg, std::optional<double> u = std::nullopt);

// Columns c, mc_var, mc_var_lo, mc_var_hi, mc_nonruin, mc_nonruin_lo,
// mc_nonruin_hi and, with a capital level, mc and mc_stderr.
CurveTable to_table(const SimulatedCurve& curve);

}  // namespace ruincap::mc
