// Copyright 2026 The HillSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hillsim/kv_config.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"

#include <sstream>

namespace hillsim {

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    KeyValueConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = line;
        if (const auto hash = row.find('#'); hash != std::string_view::npos) {
            row = row.substr(0, hash);
        }
        row = trim(row);
        if (row.empty()) {
            continue;
        }
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) {
            throw SchemaError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(row.substr(0, eq)));
        const std::string value(trim(row.substr(eq + 1)));
        if (key.empty()) {
            throw SchemaError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (cfg.values_.count(key) != 0) {
            throw SchemaError("config line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
        }
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    return parse(read_file(path));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void KeyValueConfig::set(const std::string& key, double value) {
    values_[key] = format_double(value);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return parse_double(it->second, key);
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
    return get_double(key).value_or(fallback);
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) const {
    const auto value = get(key);
    if (!value) {
        return fallback;
    }
    if (*value == "true" || *value == "1" || *value == "on") {
        return true;
    }
    if (*value == "false" || *value == "0" || *value == "off") {
        return false;
    }
    throw SchemaError("config key '" + key + "' expects a boolean, got '" + *value + "'");
}

void KeyValueConfig::require_known_keys(const std::set<std::string>& allowed,
                                        std::string_view what) const {
    for (const auto& [key, value] : values_) {
        if (allowed.count(key) == 0) {
            throw SchemaError("unknown " + std::string(what) + " key '" + key + "'");
        }
    }
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    for (const auto& [key, value] : values_) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

}  // namespace hillsim
