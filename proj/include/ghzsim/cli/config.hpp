// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzsim::cli {

/// Flat key=value settings. Keys are "section.name"; a line "[section]" sets the
/// prefix for the lines after it. '#' and ';' start comments.
class Settings {
   public:
    /// Every accepted key with its default. Anything else is rejected.
    static const std::map<std::string, std::string> &defaults() {
        static const std::map<std::string, std::string> d = {
            {"analyze.enumeration", "exhaustive"},
            {"analyze.frequency", "fixed"},
            {"analyze.mode", "ideal"},
            {"analyze.omega", "0"},
            {"analyze.state", "GHZ:000"},
            {"cavity.g", "30"},
            {"cavity.gamma", "0.3"},
            {"cavity.kappa", "270"},
            {"cavity.kappa_s", "30"},
            {"cavity.omega_c", "0"},
            {"cavity.omega_x", "0"},
            {"detector.eta0", "1"},
            {"efficiency_map.g_max", "2"},
            {"efficiency_map.g_min", "0.2"},
            {"efficiency_map.g_scale", "linear"},
            {"efficiency_map.g_steps", "10"},
            {"efficiency_map.k_max", "20"},
            {"efficiency_map.k_min", "1"},
            {"efficiency_map.k_scale", "linear"},
            {"efficiency_map.k_steps", "20"},
            {"efficiency_map.n", "2"},
            {"pulse.omega_c", "0"},
            {"pulse.sigma", "0.6"},
            {"quadrature.nodes", "64"},
            {"quadrature.tolerance", "1e-8"},
            {"reflection.omega_max", "100"},
            {"reflection.omega_min", "-100"},
            {"reflection.steps", "201"},
            {"run.seed", "1"},
            {"run.shots", "100000"},
            {"swap.mode", "ideal"},
            {"swap.omega", "0"},
            {"swap.pairs", "3"},
            {"table1.n", "2,3,4,5,6,7,8,20"},
            {"table1.t2_doubleprime_ns", "2000"},
            {"table1.t2_prime_ns", "10.9"},
        };
        return d;
    }

    Settings() : values_(defaults()) {
    }

    void set(const std::string &key, const std::string &value) {
        if (!defaults().contains(key)) {
            throw std::invalid_argument("unknown setting '" + key + "'");
        }
        values_[key] = value;
    }

    /// Applies "key=value".
    void set_assignment(const std::string &assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got '" + assignment + "'");
        }
        set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    }

    void load(std::istream &in, const std::string &origin = "<config>") {
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            line_no++;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos) {
                line.erase(comment);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            try {
                if (line.front() == '[') {
                    if (line.back() != ']' || line.size() < 3) {
                        throw std::invalid_argument("malformed section header '" + line + "'");
                    }
                    section = trim(line.substr(1, line.size() - 2));
                    continue;
                }
                const auto eq = line.find('=');
                if (eq == std::string::npos) {
                    throw std::invalid_argument("expected key=value, got '" + line + "'");
                }
                std::string key = trim(line.substr(0, eq));
                if (!section.empty()) {
                    key = section + "." + key;
                }
                set(key, trim(line.substr(eq + 1)));
            } catch (const std::invalid_argument &e) {
                throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }

    void load_file(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("cannot open config file '" + path + "'");
        }
        load(in, path);
    }

    const std::string &str(const std::string &key) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw std::invalid_argument("unknown setting '" + key + "'");
        }
        return it->second;
    }

    double number(const std::string &key) const {
        return parse_number(key, str(key));
    }

    uint64_t integer(const std::string &key) const {
        const std::string &s = str(key);
        size_t used = 0;
        unsigned long long v = 0;
        try {
            if (!s.empty() && s.front() == '-') {
                throw std::invalid_argument("negative");
            }
            v = std::stoull(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw std::invalid_argument("setting '" + key + "' must be a non-negative integer, got '" + s + "'");
        }
        return v;
    }

    std::vector<double> numbers(const std::string &key) const {
        std::vector<double> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_number(key, trim(item)));
        }
        if (out.empty()) {
            throw std::invalid_argument("setting '" + key + "' must list at least one value");
        }
        return out;
    }

    const std::map<std::string, std::string> &all() const {
        return values_;
    }

   private:
    static std::string trim(const std::string &s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            return "";
        }
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static double parse_number(const std::string &key, const std::string &s) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw std::invalid_argument("setting '" + key + "' must be a finite number, got '" + s + "'");
        }
        return v;
    }

    std::map<std::string, std::string> values_;
};

}  // namespace ghzsim::cli
