#include "ruincap_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ruincap/approx.hpp"
#include "ruincap/bounds.hpp"
#include "ruincap/capital.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/exact.hpp"

namespace ruincap::cli {

namespace {

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Reason the method cannot run on this model, or empty.
std::string incompatibility(const std::string& method, const RiskModel& m) {
    if (method == "exact" || method == "cramer") {
        if (!as_exp_pair(m)) return method + " requires exponential pair";
    }
    if (method == "mc") {
        if (m.t_law.as<Kummer>() || m.y_law.as<Kummer>()) return "mc: kummer sampling is unsupported";
    }
    if (method == "ig" || method == "ig_integral" || method == "clt" || method == "bounds") {
        try {
            derived_constants(m);
        } catch (const ModelIncompatible& e) {
            return method + ": " + e.what();
        }
    }
    return {};
}

void add_na_columns(CurveTable& t, const std::vector<std::string>& names) {
    for (const auto& n : names) t.header.push_back(n);
    for (auto& row : t.rows) row.insert(row.end(), names.size(), std::nullopt);
}

CurveTable grid_table(const std::vector<double>& grid) {
    CurveTable t;
    t.header = {"c"};
    for (double c : grid) t.rows.push_back({c});
    return t;
}

std::optional<capital::Backend> backend_of(const std::string& m) {
    if (m == "exact") return capital::Backend::exact_exp;
    if (m == "ig") return capital::Backend::inverse_gaussian;
    if (m == "clt") return capital::Backend::clt;
    if (m == "cramer") return capital::Backend::cramer;
    if (m == "mc") return capital::Backend::monte_carlo;
    return std::nullopt;
}

CapitalKind kind_of(const std::string& k) {
    if (k == "var") return CapitalKind::var;
    if (k == "ultimate") return CapitalKind::ultimate;
    return CapitalKind::nonruin;
}

// Per-point evaluation into a new column; exceptions become NA plus a warning.
template <class F>
void fill_column(CurveTable& t, const std::string& name, const std::vector<double>& grid, F&& f) {
    t.header.push_back(name);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            t.rows[i].push_back(f(grid[i]));
        } catch (const std::exception& e) {
            t.rows[i].push_back(std::nullopt);
            t.add_meta("warning", "c=" + format_double(grid[i]) + " " + name + ": " + e.what());
        }
    }
}

// Asymptotic band below c*, exponential and Lundberg bounds above it.
void add_bounds(CurveTable& t, const RunConfig& cfg, const std::vector<double>& grid) {
    const RiskModel& m = cfg.model();
    const Probability alpha(cfg.alpha);
    const double c_star = equilibrium_price(m);
    auto band = [&](double c, bool upper) -> std::optional<double> {
        if (c > c_star) return std::nullopt;
        auto b = approx::capital_asymptotic_bounds(m, alpha, cfg.t, c);
        return upper ? b.upper : b.lower;
    };
    fill_column(t, "asym_lower", grid, [&](double c) { return band(c, false); });
    fill_column(t, "asym_upper", grid, [&](double c) { return band(c, true); });
    if (auto pair = as_exp_pair(m)) {
        fill_column(t, "bound_exp", grid, [&](double c) -> std::optional<double> {
            if (c <= c_star) return std::nullopt;
            return bounds::capital_upper_bound_exp(*pair, alpha, c);
        });
    }
    if (m.y_law.light_tailed()) {
        fill_column(t, "bound_lundberg", grid, [&](double c) -> std::optional<double> {
            if (c <= c_star) return std::nullopt;
            return bounds::capital_upper_bound_lundberg(m, alpha, c);
        });
    } else {
        t.add_meta("note", "no finite upper bound for c > c* with heavy-tailed claims");
    }
    auto w = approx::capital_asymptotic_endpoints(m, alpha, cfg.t).warnings;
    for (const auto& s : w) t.add_meta("warning", "asymptotic hypotheses: " + s);
}

}  // namespace

std::vector<std::string> constants_header() {
    return {"name", "t_law", "y_law", "c_star", "M", "D2", "M_V", "D2_V", "M_N", "D2_N",
            "ig_hypotheses", "asymptotic_hypotheses", "lundberg_hypotheses"};
}

std::vector<ConstantsRow> build_constants(const RunConfig& cfg) {
    if (cfg.models.empty()) throw UsageError("model: no model configured");
    std::vector<ConstantsRow> rows;
    for (const auto& nm : cfg.models) {
        ConstantsRow r{nm.name, nm.model.t_law.describe(), nm.model.y_law.describe(), {}};
        std::string c_star = "NA";
        try {
            c_star = fixed4(equilibrium_price(nm.model));
        } catch (const ModelIncompatible&) {
        }
        r.cells.push_back(c_star);
        try {
            auto k = derived_constants(nm.model);
            for (double v : {k.m_big, k.d2_big, k.m_v, k.d2_v, k.m_n, k.d2_n}) r.cells.push_back(fixed4(v));
        } catch (const ModelIncompatible&) {
            r.cells.insert(r.cells.end(), 6, "NA");
        }
        auto rep = theorem_preconditions(nm.model);
        r.cells.push_back(yes_no(rep.inverse_gaussian()));
        r.cells.push_back(yes_no(rep.asymptotic_capital()));
        r.cells.push_back(yes_no(rep.lundberg()));
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_constants(std::ostream& os, const RunConfig& cfg, const std::vector<ConstantsRow>& rows,
                     const std::string& command) {
    os << "# tool: ruincap " << RUINCAP_VERSION << '\n';
    os << "# command: " << command << '\n';
    os << "# config: " << to_json(cfg) << '\n';
    for (const auto& nm : cfg.models) {
        for (const auto& v : theorem_preconditions(nm.model).violations()) {
            os << "# warning: " << nm.name << ": " << v << '\n';
        }
    }
    auto h = constants_header();
    for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
    os << '\n';
    for (const auto& r : rows) {
        os << r.name << ',' << r.t_law << ',' << r.y_law;
        for (const auto& c : r.cells) os << ',' << c;
        os << '\n';
    }
}

CommandOutput build_capital(const RunConfig& cfg) {
    validate(cfg);
    const RiskModel& m = cfg.model();
    const auto grid = cfg.grid.values();
    CommandOutput out{grid_table(grid), false};
    std::vector<CapitalKind> kinds;
    for (const auto& k : cfg.kinds) kinds.push_back(kind_of(k));
    for (const auto& method : cfg.methods) {
        if (method == "ig_integral") throw UsageError("methods: ig_integral applies to ruinprob only");
        const std::string reason = incompatibility(method, m);
        if (method == "bounds") {
            if (!reason.empty()) {
                add_na_columns(out.table, {"asym_lower", "asym_upper"});
                out.table.add_meta("incompatible", reason);
                out.incompatible = true;
            } else {
                add_bounds(out.table, cfg, grid);
            }
            continue;
        }
        capital::SolveSpec spec;
        spec.backend = *backend_of(method);
        spec.sim = cfg.sim;
        if (!reason.empty()) {
            std::vector<std::string> names;
            for (CapitalKind k : kinds) {
                const std::string n = std::string(to_string(k)) + "_" + method;
                names.push_back(n);
                if (method == "mc" && k != CapitalKind::ultimate) {
                    names.push_back(n + "_lo");
                    names.push_back(n + "_hi");
                }
            }
            add_na_columns(out.table, names);
            out.table.add_meta("incompatible", reason);
            out.incompatible = true;
            continue;
        }
        out.table.append_columns(capital::capital_curve(m, Probability(cfg.alpha), cfg.t, grid, spec, kinds));
    }
    return out;
}

CommandOutput build_ruinprob(const RunConfig& cfg) {
    validate(cfg);
    const RiskModel& m = cfg.model();
    const auto grid = cfg.grid.values();
    CommandOutput out{grid_table(grid), false};
    const double u = cfg.u, t = cfg.t;
    for (const auto& method : cfg.methods) {
        const std::string reason = incompatibility(method, m);
        if (method == "bounds" || method == "clt") throw UsageError("methods: " + method + " applies to capital only");
        if (!reason.empty()) {
            if (method == "mc") {
                add_na_columns(out.table, {"mc", "mc_stderr"});
            } else {
                add_na_columns(out.table, {method});
            }
            out.table.add_meta("incompatible", reason);
            out.incompatible = true;
            continue;
        }
        if (method == "exact") {
            const ExpPair p = *as_exp_pair(m);
            fill_column(out.table, "exact", grid, [&](double c) -> std::optional<double> {
                auto r = exact::ruin_finite_exp_detail(p, u, c, t);
                if (r.out_of_range) {
                    out.table.add_meta("warning", "c=" + format_double(c) + " exact: raw value " +
                                                      format_double(r.raw) + " clamped to [0,1]");
                }
                return r.value;
            });
        } else if (method == "ig" || method == "ig_integral") {
            const auto form = method == "ig" ? approx::IGForm::closed : approx::IGForm::integral;
            const auto k = derived_constants(m);
            fill_column(out.table, method, grid, [&](double c) -> std::optional<double> {
                return approx::ig_ruin_probability(k.m_big, k.d2_big, u, c, t, form).value();
            });
        } else if (method == "cramer") {
            const ExpPair p = *as_exp_pair(m);
            fill_column(out.table, "cramer", grid, [&](double c) -> std::optional<double> {
                return approx::cramer_ruin_exp(p, u, c, t).value();
            });
        } else if (method == "mc") {
            mc::SimConfig sim = cfg.sim;
            sim.t = t;
            auto curve = mc::simulate_curve(m, Probability(cfg.alpha), grid, sim, u);
            out.table.header.emplace_back("mc");
            out.table.header.emplace_back("mc_stderr");
            for (std::size_t i = 0; i < grid.size(); ++i) {
                out.table.rows[i].push_back(curve.points[i].ruin_prob->point);
                out.table.rows[i].push_back(curve.points[i].ruin_prob->std_error);
            }
            for (const auto& w : curve.warnings) out.table.add_meta("warning", w);
        }
    }
    return out;
}

void stamp(CurveTable& table, const RunConfig& cfg, const std::string& command) {
    std::vector<std::pair<std::string, std::string>> head{
        {"tool", std::string("ruincap ") + RUINCAP_VERSION},
        {"command", command},
        {"config", to_json(cfg)},
        {"seed", std::to_string(cfg.sim.seed)},
    };
    table.metadata.insert(table.metadata.begin(), head.begin(), head.end());
}

void emit(const CurveTable& table, const RunConfig& cfg, std::ostream& fallback) {
    if (cfg.output_path.empty()) {
        write_csv(fallback, table);
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw UsageError("out: cannot write " + cfg.output_path);
    write_csv(f, table);
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    auto rows = build_constants(cfg);
    if (cfg.output_path.empty()) {
        write_constants(out, cfg, rows, "constants");
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f) throw UsageError("out: cannot write " + cfg.output_path);
        write_constants(f, cfg, rows, "constants");
    }
    return exit_ok;
}

int cmd_capital(const RunConfig& cfg, std::ostream& out) {
    auto r = build_capital(cfg);
    stamp(r.table, cfg, "capital");
    emit(r.table, cfg, out);
    return r.incompatible ? exit_incompatible : exit_ok;
}

int cmd_ruinprob(const RunConfig& cfg, std::ostream& out) {
    auto r = build_ruinprob(cfg);
    stamp(r.table, cfg, "ruinprob");
    emit(r.table, cfg, out);
    return r.incompatible ? exit_incompatible : exit_ok;
}

}  // namespace ruincap::cli
