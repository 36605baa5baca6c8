#pragma once

#include <map>
#include <string>
#include <vector>

#include "stepper.hpp"

namespace skdv {

// Flat "section.key" -> value view of an INI configuration. Keys are checked
// against the known set when inserted; values are checked when the SimConfig is built.
class ConfigMap {
public:
    void set(const std::string& dotted_key, const std::string& value);
    bool has(const std::string& dotted_key) const { return values_.count(dotted_key) != 0; }
    const std::string& get(const std::string& dotted_key) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

    // Relative table paths are resolved against this directory.
    std::string base_dir;

private:
    std::map<std::string, std::string> values_;
};

const std::vector<std::string>& known_config_keys();

ConfigMap parse_config_text(const std::string& ini_text);
ConfigMap load_config_file(const std::string& path);

// "section.key=value"
void apply_override(ConfigMap& m, const std::string& assignment);

SimConfig build_config(const ConfigMap& m);

// INI text holding every entry of the map, sorted by section.
std::string to_ini(const ConfigMap& m);

}  // namespace skdv
