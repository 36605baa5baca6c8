#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "errors.hpp"

namespace skdv {

namespace {

std::vector<std::string> make_keys() {
    std::vector<std::string> keys = {
        "grid.direction", "grid.length", "grid.cells",
        "coupling.alpha", "coupling.beta", "coupling.gamma",
        "time.dt", "time.t_final", "time.stride",
        "run.tag",
    };
    for (const char* field : {"u0", "v0"}) {
        const std::string f = std::string("initial.") + field;
        for (const char* suffix : {"", "_amplitude", "_center", "_width", "_wavenumber", "_file"})
            keys.push_back(f + suffix);
    }
    for (const char* signal : {"f", "g", "h"}) {
        const std::string s = std::string("boundary.") + signal;
        for (const char* suffix : {"", "_amplitude", "_amplitude_im", "_rate", "_file"})
            keys.push_back(s + suffix);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

double to_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    return value;
}

int to_int(const std::string& key, const std::string& text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string resolve(const ConfigMap& m, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative() && !m.base_dir.empty()) p = std::filesystem::path(m.base_dir) / p;
    return p.string();
}

FieldSpec build_field(const ConfigMap& m, const std::string& name, bool real_valued) {
    const std::string prefix = "initial." + name;
    FieldSpec spec;
    if (m.has(prefix)) spec.kind = parse_field_kind(m.get(prefix));
    if (spec.kind == FieldSpec::Kind::Custom)
        throw ConfigError(prefix + ": custom fields are not available from configuration");
    if (spec.kind == FieldSpec::Kind::Table) {
        if (!m.has(prefix + "_file")) throw ConfigError(prefix + " = table needs " + prefix + "_file");
        spec = load_field_table(resolve(m, m.get(prefix + "_file")));
    }
    auto num = [&](const char* suffix, double& target) {
        const std::string k = prefix + suffix;
        if (m.has(k)) target = to_double(k, m.get(k));
    };
    num("_amplitude", spec.amplitude);
    num("_center", spec.center);
    num("_width", spec.width);
    num("_wavenumber", spec.wavenumber);
    if (spec.width <= 0.0) throw ConfigError(prefix + "_width must be positive");
    if (real_valued && spec.wavenumber != 0.0 &&
        (spec.kind == FieldSpec::Kind::Gaussian || spec.kind == FieldSpec::Kind::Sech))
        throw ConfigError(prefix + "_wavenumber must be 0 for the real KdV field");
    return spec;
}

SignalSpec build_signal(const ConfigMap& m, const std::string& name) {
    const std::string prefix = "boundary." + name;
    SignalSpec spec;
    if (m.has(prefix)) spec.kind = parse_signal_kind(m.get(prefix));
    if (spec.kind == SignalSpec::Kind::Table) {
        if (!m.has(prefix + "_file")) throw ConfigError(prefix + " = table needs " + prefix + "_file");
        spec = load_signal_table(resolve(m, m.get(prefix + "_file")));
    }
    double re = spec.amplitude.real(), im = spec.amplitude.imag();
    if (m.has(prefix + "_amplitude")) re = to_double(prefix + "_amplitude", m.get(prefix + "_amplitude"));
    if (m.has(prefix + "_amplitude_im"))
        im = to_double(prefix + "_amplitude_im", m.get(prefix + "_amplitude_im"));
    spec.amplitude = cplx(re, im);
    if (m.has(prefix + "_rate")) spec.rate = to_double(prefix + "_rate", m.get(prefix + "_rate"));
    if (name != "f" && im != 0.0) throw ConfigError(prefix + "_amplitude_im must be 0 for the real KdV data");
    return spec;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = make_keys();
    return keys;
}

void ConfigMap::set(const std::string& dotted_key, const std::string& value) {
    const auto& keys = known_config_keys();
    if (!std::binary_search(keys.begin(), keys.end(), dotted_key))
        throw ConfigError("unknown config key '" + dotted_key + "'");
    values_[dotted_key] = trim(value);
}

const std::string& ConfigMap::get(const std::string& dotted_key) const {
    auto it = values_.find(dotted_key);
    if (it == values_.end()) throw ConfigError("config key '" + dotted_key + "' is not set");
    return it->second;
}

ConfigMap parse_config_text(const std::string& ini_text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(ini_text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ConfigMap m;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError("config entry '" + section + "' is outside any section");
        for (const auto& [key, value] : body) m.set(section + "." + key, value.data());
    }
    return m;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    ConfigMap m = parse_config_text(text.str());
    m.base_dir = std::filesystem::path(path).parent_path().string();
    return m;
}

void apply_override(ConfigMap& m, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
    m.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

SimConfig build_config(const ConfigMap& m) {
    SimConfig cfg;
    if (m.has("grid.direction")) cfg.direction = parse_direction(m.get("grid.direction"));
    if (m.has("grid.length")) cfg.length = to_double("grid.length", m.get("grid.length"));
    if (m.has("grid.cells")) cfg.cells = to_int("grid.cells", m.get("grid.cells"));
    double a = cfg.coupling.alpha, b = cfg.coupling.beta, g = cfg.coupling.gamma;
    if (m.has("coupling.alpha")) a = to_double("coupling.alpha", m.get("coupling.alpha"));
    if (m.has("coupling.beta")) b = to_double("coupling.beta", m.get("coupling.beta"));
    if (m.has("coupling.gamma")) g = to_double("coupling.gamma", m.get("coupling.gamma"));
    cfg.coupling = make_coupling(a, b, g);
    cfg.u0 = build_field(m, "u0", false);
    cfg.v0 = build_field(m, "v0", true);
    cfg.signals.f = build_signal(m, "f");
    cfg.signals.g = build_signal(m, "g");
    cfg.signals.h = build_signal(m, "h");
    if (m.has("time.dt")) cfg.dt = to_double("time.dt", m.get("time.dt"));
    if (m.has("time.t_final")) cfg.t_final = to_double("time.t_final", m.get("time.t_final"));
    if (m.has("time.stride")) cfg.stride = to_int("time.stride", m.get("time.stride"));
    if (m.has("run.tag")) cfg.tag = m.get("run.tag");
    validate_config(cfg);
    return cfg;
}

std::string to_ini(const ConfigMap& m) {
    std::ostringstream out;
    std::string section;
    for (const auto& [key, value] : m.entries()) {
        const auto dot = key.find('.');
        const std::string s = key.substr(0, dot);
        if (s != section) {
            if (!section.empty()) out << '\n';
            out << '[' << s << "]\n";
            section = s;
        }
        out << key.substr(dot + 1) << " = " << value << '\n';
    }
    return out.str();
}

}  // namespace skdv
