#include "qg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qg {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
    if (pos != v.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
    if (pos != v.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return x;
}

bool parse_flag(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected on/off, got '" + v + "'");
}

std::array<int, 2> parse_mode(const std::string& key, const std::string& v) {
    const size_t comma = v.find(',');
    if (comma == std::string::npos)
        throw ConfigError("key '" + key + "': expected 'm1,m2', got '" + v + "'");
    return {static_cast<int>(parse_long(key, trim(v.substr(0, comma)))),
            static_cast<int>(parse_long(key, trim(v.substr(comma + 1))))};
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

class KeyTable {
public:
    explicit KeyTable(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const size_t eq = line.find('=');
            if (eq == std::string::npos) {
                std::ostringstream msg;
                msg << "line " << lineno << ": expected 'key = value', got '" << line << "'";
                throw ConfigError(msg.str());
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("empty key in config");
            if (!entries_.emplace(key, value).second)
                throw ConfigError("duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string require(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    std::string get(const std::string& key, const std::string& fallback) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : entries_) {
            if (!used_.count(key)) throw ConfigError("unknown key '" + key + "'");
        }
    }

private:
    std::map<std::string, std::string> entries_;
    std::set<std::string> used_;
};

} // namespace

RunConfig parse_config(const std::string& text) {
    KeyTable keys(text);
    RunConfig cfg;

    cfg.n = static_cast<int>(parse_long("n", keys.require("n")));
    cfg.l = parse_double("l", keys.get("l", "6.283185307179586"));
    cfg.params.alpha = parse_double("alpha", keys.require("alpha"));
    cfg.params.k = parse_double("k", keys.require("k"));
    cfg.params.dt = parse_double("dt", keys.require("dt"));
    cfg.params.t_end = parse_double("t_end", keys.require("t_end"));
    cfg.params.cfl_coeff = parse_double("cfl", keys.get("cfl", "0.5"));
    cfg.params.dealias_on = parse_flag("dealias", keys.get("dealias", "on"));
    cfg.params.record_every = parse_long("record_every", keys.get("record_every", "1"));
    cfg.snapshot_every = parse_long("snapshot_every", keys.get("snapshot_every", "0"));
    cfg.out_dir = keys.get("out_dir", ".");
    cfg.tolerance = parse_double("tolerance", keys.get("tolerance", "1e-6"));
    cfg.decay_threshold = parse_double("decay_threshold", keys.get("decay_threshold", "0.05"));

    cfg.init.kind = init_kind_from_string(keys.require("init.kind"));
    cfg.init.amplitude = parse_double("init.amplitude", keys.require("init.amplitude"));
    switch (cfg.init.kind) {
        case InitKind::single_mode:
            cfg.init.mode = parse_mode("init.mode", keys.require("init.mode"));
            break;
        case InitKind::two_mode:
            cfg.init.mode = parse_mode("init.mode", keys.require("init.mode"));
            cfg.init.mode2 = parse_mode("init.mode2", keys.require("init.mode2"));
            break;
        case InitKind::gaussian_spectrum:
            cfg.init.kappa0 = parse_double("init.kappa0", keys.require("init.kappa0"));
            cfg.init.width = parse_double("init.width", keys.require("init.width"));
            cfg.init.seed = static_cast<unsigned long long>(
                parse_long("init.seed", keys.require("init.seed")));
            break;
        case InitKind::random_phase:
            cfg.init.slope = parse_double("init.slope", keys.require("init.slope"));
            cfg.init.cutoff = parse_double("init.cutoff", keys.get("init.cutoff", "0"));
            cfg.init.seed = static_cast<unsigned long long>(
                parse_long("init.seed", keys.require("init.seed")));
            break;
    }
    if (keys.has("init.target_norm"))
        cfg.init.target_norm = parse_double("init.target_norm", keys.require("init.target_norm"));
    if (keys.has("init.target_sigma"))
        cfg.init.target_sigma =
            parse_double("init.target_sigma", keys.require("init.target_sigma"));

    if (keys.has("sweep.alpha"))
        cfg.sweep_alpha = parse_double_list("sweep.alpha", keys.require("sweep.alpha"));
    if (keys.has("sweep.k"))
        cfg.sweep_k = parse_double_list("sweep.k", keys.require("sweep.k"));
    if (keys.has("sweep.target_norm"))
        cfg.sweep_target_norm =
            parse_double_list("sweep.target_norm", keys.require("sweep.target_norm"));

    keys.reject_unknown();

    // Validate everything up front, before any computation starts.
    if (cfg.n < 4 || cfg.n % 2 != 0)
        throw ConfigError("n must be an even integer >= 4");
    if (!(cfg.l > 0.0)) throw ConfigError("l must be positive");
    try {
        cfg.params.validate();
        (void)cfg.grid();
        if (cfg.init.kind == InitKind::single_mode || cfg.init.kind == InitKind::two_mode) {
            (void)build_initial(cfg.init, cfg.grid()); // mode-range check
        }
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (cfg.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
    if (cfg.snapshot_every > 0 && cfg.snapshot_every % cfg.params.record_every != 0)
        throw ConfigError("snapshot_every must be a multiple of record_every");
    if (!(cfg.tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
    if (!(cfg.decay_threshold > 0.0)) throw ConfigError("decay_threshold must be positive");
    for (double a : cfg.sweep_alpha) {
        SimParams p = cfg.params;
        p.alpha = a;
        try {
            p.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
    for (double kv : cfg.sweep_k) {
        if (!(kv > 0.0)) throw ConfigError("sweep.k values must be positive");
    }

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace qg
