#include "omlaser/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace omlaser {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

struct Ini {
    std::string source;
    std::map<std::string, Section> sections;

    [[noreturn]] void fail(int line, const std::string& what) const {
        std::ostringstream msg;
        msg << source << ":" << line << ": " << what;
        throw ConfigError(msg.str());
    }
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Ini parse_ini(const std::string& text, const std::string& source) {
    Ini ini;
    ini.source = source;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find_first_of("#;");
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') ini.fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) ini.fail(line_no, "empty section name");
            ini.sections[section];  // a section may legally be empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) ini.fail(line_no, "expected key = value");
        if (section.empty()) ini.fail(line_no, "key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) ini.fail(line_no, "empty key");
        if (value.empty()) ini.fail(line_no, "empty value for key '" + key + "'");
        auto [it, fresh] = ini.sections[section].emplace(key, Entry{value, line_no, false});
        if (!fresh) ini.fail(line_no, "duplicate key '" + key + "'");
    }
    return ini;
}

class Reader {
   public:
    Reader(Ini& ini, const std::string& section) : ini_(ini), name_(section) {
        auto it = ini.sections.find(section);
        section_ = it == ini.sections.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    template <typename T, typename Parse>
    bool get(const std::string& key, T& out, Parse parse) {
        if (!section_) return false;
        auto it = section_->find(key);
        if (it == section_->end()) return false;
        it->second.used = true;
        if (!parse(it->second.value, out))
            ini_.fail(it->second.line,
                      "invalid value '" + it->second.value + "' for key '" + key + "'");
        return true;
    }

    bool get(const std::string& key, double& out) {
        return get(key, out, [](const std::string& v, double& x) {
            std::size_t pos = 0;
            try {
                x = std::stod(v, &pos);
            } catch (...) {
                return false;
            }
            return pos == v.size();
        });
    }

    bool get(const std::string& key, int& out) {
        return get(key, out, [](const std::string& v, int& x) {
            std::size_t pos = 0;
            try {
                x = std::stoi(v, &pos);
            } catch (...) {
                return false;
            }
            return pos == v.size();
        });
    }

    bool get(const std::string& key, std::uint64_t& out) {
        return get(key, out, [](const std::string& v, std::uint64_t& x) {
            std::size_t pos = 0;
            try {
                x = std::stoull(v, &pos);
            } catch (...) {
                return false;
            }
            return pos == v.size();
        });
    }

    bool get(const std::string& key, std::string& out) {
        return get(key, out, [](const std::string& v, std::string& x) {
            x = v;
            return true;
        });
    }

    void require(const std::string& key, double& out) {
        if (!get(key, out))
            throw ConfigError(ini_.source + ": missing required key '" + key +
                              "' in section [" + name_ + "]");
    }

   private:
    Ini& ini_;
    std::string name_;
    Section* section_;
};

void reject_unused(const Ini& ini, const std::set<std::string>& known_sections) {
    for (const auto& [name, section] : ini.sections) {
        if (!known_sections.count(name))
            throw ConfigError(ini.source + ": unknown section [" + name + "]");
        for (const auto& [key, entry] : section)
            if (!entry.used)
                ini.fail(entry.line, "unknown key '" + key + "' in section [" + name + "]");
    }
}

bool parse_mode(const std::string& v, SweepMode& out) {
    if (v == "fresh") out = SweepMode::Fresh;
    else if (v == "continue_forward") out = SweepMode::ContinueForward;
    else if (v == "continue_backward") out = SweepMode::ContinueBackward;
    else return false;
    return true;
}

}  // namespace

SweepSpec RunConfig::sweep_spec() const {
    if (!sweep) throw ConfigError("config has no [sweep] section");
    SweepSpec spec;
    spec.omega_min = sweep->omega_min;
    spec.omega_max = sweep->omega_max;
    spec.steps = sweep->steps;
    spec.mode = sweep->mode;
    spec.integrator = integrator;
    return spec;
}

Map2DSpec RunConfig::map_spec() const {
    if (!map) throw ConfigError("config has no [map] section");
    Map2DSpec spec;
    spec.omega_min = map->omega_min;
    spec.omega_max = map->omega_max;
    spec.omega_steps = map->omega_steps;
    spec.delta_omega1_min = map->delta_omega1_min;
    spec.delta_omega1_max = map->delta_omega1_max;
    spec.delta_omega1_steps = map->delta_omega1_steps;
    spec.delta_omega2_offset = map->delta_omega2_offset;
    spec.integrator = integrator;
    return spec;
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
    Ini ini = parse_ini(text, source_name);
    RunConfig cfg;

    if (!ini.sections.count("params"))
        throw ConfigError(source_name + ": missing required section [params]");
    Reader params(ini, "params");
    params.require("delta_omega1", cfg.params.delta_omega1);
    params.require("delta_omega2", cfg.params.delta_omega2);
    params.require("omega_b", cfg.params.omega_b);
    params.require("gamma1", cfg.params.gamma1);
    params.require("gamma2", cfg.params.gamma2);
    params.require("gamma_b", cfg.params.gamma_b);
    params.require("g", cfg.params.g);
    params.get("omega_drive", cfg.params.omega_drive);

    Reader integ(ini, "integrator");
    integ.get("dt", cfg.integrator.dt);
    integ.get("t_end", cfg.integrator.t_end);
    integ.get("seed_amplitude", cfg.integrator.seed_amplitude);
    integ.get("tail_fraction", cfg.integrator.tail_fraction);
    integ.get("stationarity_tol", cfg.integrator.stationarity_tol);
    integ.get("save_stride", cfg.integrator.save_stride);

    Reader noise(ini, "noise");
    noise.get("n1", cfg.noise.n1);
    noise.get("n2", cfg.noise.n2);
    noise.get("nb", cfg.noise.nb);
    noise.get("dt", cfg.noise.dt);
    noise.get("t_end", cfg.noise.t_end);
    noise.get("realizations", cfg.noise.n_realizations);
    noise.get("base_seed", cfg.noise.base_seed);
    noise.get("transient_fraction", cfg.noise.transient_fraction);
    noise.get("save_stride", cfg.noise.save_stride);

    Reader sweep(ini, "sweep");
    if (sweep.present()) {
        SweepSettings s;
        sweep.require("omega_min", s.omega_min);
        sweep.require("omega_max", s.omega_max);
        if (!sweep.get("steps", s.steps))
            throw ConfigError(source_name + ": missing required key 'steps' in section [sweep]");
        sweep.get("mode", s.mode, parse_mode);
        cfg.sweep = s;
    }

    Reader map(ini, "map");
    if (map.present()) {
        MapSettings m;
        map.require("omega_min", m.omega_min);
        map.require("omega_max", m.omega_max);
        if (!map.get("omega_steps", m.omega_steps))
            throw ConfigError(source_name +
                              ": missing required key 'omega_steps' in section [map]");
        map.require("delta_omega1_min", m.delta_omega1_min);
        map.require("delta_omega1_max", m.delta_omega1_max);
        if (!map.get("delta_omega1_steps", m.delta_omega1_steps))
            throw ConfigError(source_name +
                              ": missing required key 'delta_omega1_steps' in section [map]");
        map.get("delta_omega2_offset", m.delta_omega2_offset);
        cfg.map = m;
    }

    Reader output(ini, "output");
    output.get("prefix", cfg.output_prefix);

    reject_unused(ini, {"params", "integrator", "noise", "sweep", "map", "output"});

    try {
        cfg.params.validate();
        cfg.integrator.validate();
        cfg.noise.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace omlaser
