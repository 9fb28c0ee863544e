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

#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ghzsim::cli {

inline constexpr const char *kVersion = "1.0.0";

enum class OutputFormat { Csv, Json, Markdown };

inline OutputFormat parse_output_format(const std::string &s) {
    if (s == "csv") {
        return OutputFormat::Csv;
    }
    if (s == "json") {
        return OutputFormat::Json;
    }
    if (s == "md") {
        return OutputFormat::Markdown;
    }
    throw std::invalid_argument("format must be csv, json or md, got '" + s + "'");
}

inline std::string format_number(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

/// Output of one command: metadata (version, command, every resolved setting)
/// plus either a numeric table or a JSON document.
struct RunReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::optional<nlohmann::ordered_json> document;

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) {
            throw std::logic_error("RunReport: row width does not match the header");
        }
        rows.push_back(std::move(row));
    }

    bool tabular() const {
        return !document.has_value();
    }

    nlohmann::ordered_json metadata_json() const {
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (const auto &[k, v] : metadata) {
            m[k] = v;
        }
        return m;
    }

    void write_csv(std::ostream &out) const {
        if (!tabular()) {
            throw std::invalid_argument("this command only produces JSON output");
        }
        for (const auto &[k, v] : metadata) {
            out << "# " << k << "=" << v << "\n";
        }
        for (size_t c = 0; c < columns.size(); c++) {
            out << (c ? "," : "") << columns[c];
        }
        out << "\n";
        for (const auto &row : rows) {
            for (size_t c = 0; c < row.size(); c++) {
                out << (c ? "," : "") << format_number(row[c]);
            }
            out << "\n";
        }
    }

    void write_json(std::ostream &out) const {
        nlohmann::ordered_json j;
        j["metadata"] = metadata_json();
        if (document) {
            for (const auto &[k, v] : document->items()) {
                j[k] = v;
            }
        } else {
            j["columns"] = columns;
            j["rows"] = rows;
        }
        out << j.dump(2) << "\n";
    }

    void write_markdown(std::ostream &out) const {
        if (!tabular()) {
            throw std::invalid_argument("this command only produces JSON output");
        }
        for (const auto &[k, v] : metadata) {
            out << "<!-- " << k << "=" << v << " -->\n";
        }
        out << "|";
        for (const auto &c : columns) {
            out << " " << c << " |";
        }
        out << "\n|";
        for (size_t c = 0; c < columns.size(); c++) {
            out << "---|";
        }
        out << "\n";
        for (const auto &row : rows) {
            out << "|";
            for (double v : row) {
                out << " " << format_number(v, 6) << " |";
            }
            out << "\n";
        }
    }

    void write(std::ostream &out, OutputFormat format) const {
        switch (format) {
            case OutputFormat::Csv:
                write_csv(out);
                break;
            case OutputFormat::Json:
                write_json(out);
                break;
            case OutputFormat::Markdown:
                write_markdown(out);
                break;
        }
    }
};

}  // namespace ghzsim::cli
