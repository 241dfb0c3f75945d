#include "ruincap_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ruincap/errors.hpp"

namespace ruincap::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::vector<std::string>>& family_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"exponential", {"rate"}},
        {"erlang", {"rate", "shape"}},
        {"mixture2", {"rate1", "rate2", "weight"}},
        {"pareto", {"a", "b"}},
        {"kummer", {"k", "l"}},
    };
    return keys;
}

Distribution make_law(const std::string& family, const std::map<std::string, double>& p, const std::string& where) {
    auto it = family_keys().find(family);
    if (it == family_keys().end()) throw UsageError(where + ".family: unknown family '" + family + "'");
    for (const auto& [k, v] : p) {
        const auto& allowed = it->second;
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw UsageError(where + "." + k + ": not a parameter of " + family);
        }
    }
    for (const auto& k : it->second) {
        if (!p.count(k)) throw UsageError(where + "." + k + ": missing parameter for " + family);
    }
    try {
        if (family == "exponential") return Distribution::exponential(p.at("rate"));
        if (family == "erlang") {
            const double shape = p.at("shape");
            if (shape != std::floor(shape) || shape < 1 || shape > 1e6) {
                throw UsageError(where + ".shape: must be a positive integer");
            }
            return Distribution::erlang(p.at("rate"), static_cast<int>(shape));
        }
        if (family == "mixture2") return Distribution::mixture2(p.at("rate1"), p.at("rate2"), p.at("weight"));
        if (family == "pareto") return Distribution::pareto(p.at("a"), p.at("b"));
        return Distribution::kummer(p.at("k"), p.at("l"));
    } catch (const DomainError& e) {
        throw UsageError(where + ": " + e.what());
    }
}

Distribution law_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw UsageError(where + ": expected an object");
    if (!j.contains("family") || !j["family"].is_string()) throw UsageError(where + ".family: missing");
    std::map<std::string, double> p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "family") continue;
        if (!it.value().is_number()) throw UsageError(where + "." + it.key() + ": expected a number");
        p[it.key()] = it.value().get<double>();
    }
    return make_law(j["family"].get<std::string>(), p, where);
}

json law_to_json(const Distribution& d) {
    json j;
    j["family"] = std::string(d.family());
    std::visit(
        [&](const auto& law) {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                j["rate"] = law.rate;
            } else if constexpr (std::is_same_v<T, Erlang>) {
                j["rate"] = law.rate;
                j["shape"] = law.shape;
            } else if constexpr (std::is_same_v<T, MixtureExp2>) {
                j["rate1"] = law.rate1;
                j["rate2"] = law.rate2;
                j["weight"] = law.weight;
            } else if constexpr (std::is_same_v<T, Pareto>) {
                j["a"] = law.shape;
                j["b"] = law.scale;
            } else {
                j["k"] = law.k;
                j["l"] = law.l;
            }
        },
        d.law());
    return j;
}

NamedModel model_from_json(const json& j, const std::string& where, const std::string& default_name) {
    if (!j.is_object()) throw UsageError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "name" && it.key() != "t_law" && it.key() != "y_law") {
            throw UsageError(where + "." + it.key() + ": unknown field");
        }
    }
    if (!j.contains("t_law")) throw UsageError(where + ".t_law: missing");
    if (!j.contains("y_law")) throw UsageError(where + ".y_law: missing");
    NamedModel m{default_name, {law_from_json(j["t_law"], where + ".t_law"), law_from_json(j["y_law"], where + ".y_law")}};
    if (j.contains("name")) m.name = j["name"].get<std::string>();
    return m;
}

template <class T>
T get_field(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(where + key + ": wrong type");
    }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw UsageError(where + it.key() + ": unknown field");
    }
}

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> out;
    if (!(step > 0.0) || stop < start) return out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        // round away the accumulated binary noise of start + i*step
        out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

const RiskModel& RunConfig::model() const {
    if (models.empty()) throw UsageError("model: no model configured (use --config or --t-law/--y-law)");
    return models.front().model;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

Distribution parse_law(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    std::map<std::string, double> p;
    if (colon != std::string::npos) {
        for (const auto& kv : split_list(spec.substr(colon + 1))) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw UsageError("law '" + spec + "': expected key=value, got '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            try {
                std::size_t used = 0;
                p[key] = std::stod(kv.substr(eq + 1), &used);
                if (used != kv.size() - eq - 1) throw std::invalid_argument(key);
            } catch (const std::logic_error&) {
                throw UsageError("law '" + spec + "': bad number for " + key);
            }
        }
    }
    return make_law(family, p, "law");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    static const std::set<std::string> known{"model", "models", "alpha", "t", "u", "c_grid",
                                             "methods", "kinds", "sim", "output"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw UsageError("config." + it.key() + ": unknown field");
    }
    RunConfig cfg;
    if (j.contains("model")) cfg.models.push_back(model_from_json(j["model"], "config.model", "model"));
    if (j.contains("models")) {
        if (!j["models"].is_array()) throw UsageError("config.models: expected an array");
        int i = 0;
        for (const auto& m : j["models"]) {
            const std::string where = "config.models[" + std::to_string(i) + "]";
            cfg.models.push_back(model_from_json(m, where, "model" + std::to_string(i + 1)));
            ++i;
        }
    }
    if (j.contains("alpha")) cfg.alpha = get_field<double>(j, "alpha", "config.");
    if (j.contains("t")) cfg.t = get_field<double>(j, "t", "config.");
    if (j.contains("u")) cfg.u = get_field<double>(j, "u", "config.");
    if (j.contains("c_grid")) {
        const auto& g = j["c_grid"];
        if (!g.is_object()) throw UsageError("config.c_grid: expected an object");
        reject_unknown(g, {"start", "stop", "step"}, "config.c_grid.");
        if (g.contains("start")) cfg.grid.start = get_field<double>(g, "start", "config.c_grid.");
        if (g.contains("stop")) cfg.grid.stop = get_field<double>(g, "stop", "config.c_grid.");
        if (g.contains("step")) cfg.grid.step = get_field<double>(g, "step", "config.c_grid.");
    }
    if (j.contains("methods")) cfg.methods = get_field<std::vector<std::string>>(j, "methods", "config.");
    if (j.contains("kinds")) cfg.kinds = get_field<std::vector<std::string>>(j, "kinds", "config.");
    if (j.contains("sim")) {
        const auto& s = j["sim"];
        if (!s.is_object()) throw UsageError("config.sim: expected an object");
        reject_unknown(s, {"n_paths", "seed", "stream_count", "threads"}, "config.sim.");
        if (s.contains("n_paths")) cfg.sim.n_paths = get_field<std::uint64_t>(s, "n_paths", "config.sim.");
        if (s.contains("seed")) cfg.sim.seed = get_field<std::uint64_t>(s, "seed", "config.sim.");
        if (s.contains("stream_count")) {
            cfg.sim.stream_count = get_field<std::uint64_t>(s, "stream_count", "config.sim.");
        }
        if (s.contains("threads")) cfg.sim.threads = get_field<unsigned>(s, "threads", "config.sim.");
    }
    if (j.contains("output")) cfg.output_path = get_field<std::string>(j, "output", "config.");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply(RunConfig& cfg, const Overrides& o) {
    if (o.alpha) cfg.alpha = *o.alpha;
    if (o.t) cfg.t = *o.t;
    if (o.u) cfg.u = *o.u;
    if (o.c_start) cfg.grid.start = *o.c_start;
    if (o.c_stop) cfg.grid.stop = *o.c_stop;
    if (o.c_step) cfg.grid.step = *o.c_step;
    if (o.methods) cfg.methods = split_list(*o.methods);
    if (o.kinds) cfg.kinds = split_list(*o.kinds);
    if (o.paths) cfg.sim.n_paths = *o.paths;
    if (o.seed) cfg.sim.seed = *o.seed;
    if (o.threads) cfg.sim.threads = *o.threads;
    if (o.stream_count) cfg.sim.stream_count = *o.stream_count;
    if (o.out) cfg.output_path = *o.out;
    if (o.t_law || o.y_law) {
        if (cfg.models.empty()) {
            if (!o.t_law || !o.y_law) throw UsageError("--t-law and --y-law: both are needed without a config model");
            cfg.models.push_back({"model", {parse_law(*o.t_law), parse_law(*o.y_law)}});
        } else {
            auto& m = cfg.models.front().model;
            if (o.t_law) m.t_law = parse_law(*o.t_law);
            if (o.y_law) m.y_law = parse_law(*o.y_law);
        }
    }
}

Overrides overrides_from_config(const std::string& text) {
    const RunConfig cfg = parse_config(text);
    if (!cfg.models.empty()) throw UsageError("config.model: presets fix their models");
    const json j = json::parse(text);
    Overrides o;
    if (j.contains("alpha")) o.alpha = cfg.alpha;
    if (j.contains("t")) o.t = cfg.t;
    if (j.contains("u")) o.u = cfg.u;
    if (j.contains("c_grid")) {
        const auto& g = j["c_grid"];
        if (g.contains("start")) o.c_start = cfg.grid.start;
        if (g.contains("stop")) o.c_stop = cfg.grid.stop;
        if (g.contains("step")) o.c_step = cfg.grid.step;
    }
    if (j.contains("methods") || j.contains("kinds")) {
        throw UsageError("config.methods: presets fix their columns");
    }
    if (j.contains("sim")) {
        const auto& s = j["sim"];
        if (s.contains("n_paths")) o.paths = cfg.sim.n_paths;
        if (s.contains("seed")) o.seed = cfg.sim.seed;
        if (s.contains("stream_count")) o.stream_count = cfg.sim.stream_count;
        if (s.contains("threads")) o.threads = cfg.sim.threads;
    }
    if (j.contains("output")) o.out = cfg.output_path;
    return o;
}

void validate(const RunConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) throw UsageError("alpha: must lie in (0, 0.5)");
    if (!(cfg.t > 0.0 && std::isfinite(cfg.t))) throw UsageError("t: must be positive");
    if (!(cfg.u >= 0.0 && std::isfinite(cfg.u))) throw UsageError("u: must be >= 0");
    if (!(cfg.grid.step > 0.0)) throw UsageError("c_grid.step: must be > 0");
    if (!(cfg.grid.start >= 0.0)) throw UsageError("c_grid.start: must be >= 0");
    if (!(cfg.grid.stop >= cfg.grid.start)) throw UsageError("c_grid.stop: must be >= start");
    if (cfg.grid.values().size() > 1000000) throw UsageError("c_grid: more than 10^6 points");
    if (cfg.sim.n_paths == 0) throw UsageError("sim.n_paths: must be positive");
    if (cfg.sim.stream_count == 0) throw UsageError("sim.stream_count: must be positive");
    static const std::set<std::string> methods{"exact", "ig", "ig_integral", "clt", "cramer", "mc", "bounds"};
    for (const auto& m : cfg.methods) {
        if (!methods.count(m)) throw UsageError("methods: unknown method '" + m + "'");
    }
    static const std::set<std::string> kinds{"var", "nonruin", "ultimate"};
    for (const auto& k : cfg.kinds) {
        if (!kinds.count(k)) throw UsageError("kinds: unknown kind '" + k + "'");
    }
}

std::string to_json(const RunConfig& cfg) {
    json j;
    json models = json::array();
    for (const auto& m : cfg.models) {
        models.push_back({{"name", m.name}, {"t_law", law_to_json(m.model.t_law)}, {"y_law", law_to_json(m.model.y_law)}});
    }
    j["models"] = models;
    j["alpha"] = cfg.alpha;
    j["t"] = cfg.t;
    j["u"] = cfg.u;
    j["c_grid"] = {{"start", cfg.grid.start}, {"stop", cfg.grid.stop}, {"step", cfg.grid.step}};
    j["methods"] = cfg.methods;
    j["kinds"] = cfg.kinds;
    j["sim"] = {{"n_paths", cfg.sim.n_paths}, {"seed", cfg.sim.seed}, {"stream_count", cfg.sim.stream_count}};
    return j.dump();
}

}  // namespace ruincap::cli
