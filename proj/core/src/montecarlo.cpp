#include "ruincap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "ruincap/errors.hpp"

namespace ruincap::mc {

namespace {

constexpr double z95 = 1.959963984540054;

void check_sampleable(const RiskModel& m) {
    if (m.t_law.as<Kummer>() || m.y_law.as<Kummer>()) {
        throw Unsupported("monte carlo: kummer sampling is unsupported");
    }
}

void check_config(const SimConfig& cfg) {
    if (cfg.n_paths == 0) throw DomainError("monte carlo: n_paths must be positive");
    if (cfg.stream_count == 0) throw DomainError("monte carlo: stream_count must be positive");
    if (!(cfg.t > 0.0 && std::isfinite(cfg.t))) throw DomainError("monte carlo: t must be positive");
}

struct Point {
    double s, v;
};

// Claim epochs and cumulative claims up to t, starting from (0, 0).
void generate_claims(const RiskModel& m, double t, RandomStream& rng, std::vector<Point>& pts) {
    pts.clear();
    pts.push_back({0.0, 0.0});
    double s = 0.0, v = 0.0;
    for (;;) {
        s += sample(m.t_law, rng);
        if (s > t) break;
        v += sample(m.y_law, rng);
        pts.push_back({s, v});
    }
}

// Upper convex hull of points sorted by s; max_k (v_k - c s_k) is attained on it.
void upper_hull(std::vector<Point>& pts) {
    std::size_t h = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (h >= 2) {
            const Point& a = pts[h - 2];
            const Point& b = pts[h - 1];
            const Point& p = pts[i];
            // drop b if it lies on or below segment a-p
            if ((b.s - a.s) * (p.v - a.v) - (b.v - a.v) * (p.s - a.s) >= 0.0) {
                --h;
            } else {
                break;
            }
        }
        pts[h++] = pts[i];
    }
    pts.resize(h);
}

struct Sweep {
    std::vector<double> sup;       // n_paths x grid, row-major by path
    std::vector<double> terminal;  // V_t per path
};

Sweep run(const RiskModel& m, const std::vector<double>& grid, const SimConfig& cfg) {
    check_sampleable(m);
    check_config(cfg);
    for (std::size_t j = 1; j < grid.size(); ++j) {
        if (!(grid[j] > grid[j - 1])) throw DomainError("monte carlo: c grid must be strictly increasing");
    }
    for (double c : grid) {
        if (!(c >= 0.0)) throw DomainError("monte carlo: c must be >= 0");
    }
    const std::size_t n = cfg.n_paths, g = grid.size();
    Sweep out;
    out.sup.assign(n * g, 0.0);
    out.terminal.assign(n, 0.0);

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            std::vector<Point> pts;
            for (std::size_t i = w; i < n; i += workers) {
                RandomStream rng(cfg.seed, i % cfg.stream_count, i / cfg.stream_count);
                generate_claims(m, cfg.t, rng, pts);
                out.terminal[i] = pts.back().v;
                upper_hull(pts);
                // c ascending moves the maximiser towards earlier epochs
                std::size_t k = pts.size() - 1;
                double* row = &out.sup[i * g];
                for (std::size_t j = 0; j < g; ++j) {
                    const double c = grid[j];
                    while (k > 0 && pts[k - 1].v - c * pts[k - 1].s >= pts[k].v - c * pts[k].s) --k;
                    row[j] = std::max(0.0, pts[k].v - c * pts[k].s);
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Estimate proportion(std::size_t hits, std::size_t n) {
    Estimate e;
    e.point = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(n));
    e.ci_lo = std::max(0.0, e.point - z95 * e.std_error);
    e.ci_hi = std::min(1.0, e.point + z95 * e.std_error);
    return e;
}

// Upper (1 - alpha)-quantile with a rank-based 95% interval; values clamped at 0.
Estimate quantile(std::vector<double>& xs, double alpha) {
    const std::size_t n = xs.size();
    const double nd = static_cast<double>(n);
    auto rank_value = [&](double rank) {
        auto r = static_cast<std::size_t>(std::clamp(rank, 1.0, nd));
        std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r - 1), xs.end());
        return std::max(0.0, xs[r - 1]);
    };
    const double k = std::ceil((1.0 - alpha) * nd - 1e-9);
    const double h = z95 * std::sqrt(nd * alpha * (1.0 - alpha));
    Estimate e;
    e.point = rank_value(k);
    e.ci_lo = rank_value(std::floor(k - h));
    e.ci_hi = rank_value(std::ceil(k + h));
    e.std_error = (e.ci_hi - e.ci_lo) / (2.0 * z95);
    return e;
}

std::vector<std::string> size_warnings(const SimConfig& cfg, double alpha) {
    std::vector<std::string> w;
    if (cfg.n_paths < 100) w.emplace_back("n_paths < 100: confidence intervals are unreliable");
    if (static_cast<double>(cfg.n_paths) < 50.0 / alpha) {
        w.emplace_back("insufficient paths: n_paths < 50/alpha for the alpha-tail quantile");
    }
    return w;
}

}  // namespace

PathStats simulate_path(const RiskModel& m, double c, double t, RandomStream& rng) {
    check_sampleable(m);
    PathStats st{0.0, 0.0};
    double s = 0.0, v = 0.0;
    for (;;) {
        s += sample(m.t_law, rng);
        if (s > t) break;
        v += sample(m.y_law, rng);
        st.sup_deficit = std::max(st.sup_deficit, v - c * s);
    }
    st.terminal_deficit = v - c * t;
    return st;
}

Estimate estimate_ruin_prob(const RiskModel& m, double u, double c, const SimConfig& cfg) {
    if (!(u >= 0.0)) throw DomainError("monte carlo: u must be >= 0");
    const Sweep sw = run(m, {c}, cfg);
    std::size_t hits = 0;
    for (double d : sw.sup) hits += d > u;
    return proportion(hits, cfg.n_paths);
}

CapitalEstimates estimate_capitals(const RiskModel& m, Probability alpha, double c, const SimConfig& cfg) {
    auto curve = simulate_curve(m, alpha, {c}, cfg);
    return {curve.points[0].var_cap, curve.points[0].nonruin_cap, curve.warnings};
}

SimulatedCurve simulate_curve(const RiskModel& m, Probability alpha, const std::vector<double>& c_grid,
                              const SimConfig& cfg, std::optional<double> u) {
    if (!(alpha.value() > 0.0 && alpha.value() < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    SimulatedCurve out;
    out.warnings = size_warnings(cfg, alpha.value());
    if (c_grid.empty()) return out;
    const Sweep sw = run(m, c_grid, cfg);
    const std::size_t n = cfg.n_paths, g = c_grid.size();
    std::vector<double> col(n);
    for (std::size_t j = 0; j < g; ++j) {
        CurvePoint p;
        p.c = c_grid[j];
        for (std::size_t i = 0; i < n; ++i) col[i] = sw.sup[i * g + j];
        if (u) {
            std::size_t hits = 0;
            for (double d : col) hits += d > *u;
            p.ruin_prob = proportion(hits, n);
        }
        p.nonruin_cap = quantile(col, alpha.value());
        for (std::size_t i = 0; i < n; ++i) col[i] = sw.terminal[i] - p.c * cfg.t;
        p.var_cap = quantile(col, alpha.value());
        out.points.push_back(p);
    }
    return out;
}

CurveTable to_table(const SimulatedCurve& curve) {
    CurveTable t;
    t.header = {"c", "mc_var", "mc_var_lo", "mc_var_hi", "mc_nonruin", "mc_nonruin_lo", "mc_nonruin_hi"};
    const bool with_prob = !curve.points.empty() && curve.points[0].ruin_prob.has_value();
    if (with_prob) {
        t.header.emplace_back("mc");
        t.header.emplace_back("mc_stderr");
    }
    for (const auto& p : curve.points) {
        std::vector<std::optional<double>> row{p.c,
                                               p.var_cap.point,
                                               p.var_cap.ci_lo,
                                               p.var_cap.ci_hi,
                                               p.nonruin_cap.point,
                                               p.nonruin_cap.ci_lo,
                                               p.nonruin_cap.ci_hi};
        if (with_prob) {
            row.emplace_back(p.ruin_prob->point);
            row.emplace_back(p.ruin_prob->std_error);
        }
        t.rows.push_back(std::move(row));
    }
    for (const auto& w : curve.warnings) t.add_meta("warning", w);
    return t;
}

}  // namespace ruincap::mc
