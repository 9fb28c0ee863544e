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

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ghzsim/cli/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOptions {
    std::string config;
    std::vector<std::string> assignments;
    std::string out;
    std::string format;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> shots;
    bool timestamp = false;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
    cmd->add_option("--config", opts.config, "Settings file (key=value lines with [section] headers)");
    cmd->add_option("--set", opts.assignments, "Override one setting, e.g. --set cavity.kappa=90")
        ->type_name("KEY=VALUE");
    cmd->add_option("--out", opts.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json", "md"}));
    cmd->add_option("--seed", opts.seed, "Monte-Carlo seed (run.seed)");
    cmd->add_option("--shots", opts.shots, "Monte-Carlo shots (run.shots)");
    cmd->add_flag("--timestamp", opts.timestamp, "Record the wall-clock time in the metadata");
}

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace ghzsim::cli;

    CLI::App app{"Simulator for the passive QND-based GHZ-state analyzer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOptions opts;
    std::string state;
    std::string mode;
    std::optional<uint64_t> pairs;

    auto *reflection = app.add_subcommand("reflection", "Reflection amplitudes and single-photon efficiency vs frequency");
    auto *efficiency = app.add_subcommand("efficiency-map", "Pulse-averaged n-photon efficiency over a g/kappa_s x kappa/kappa_s grid");
    auto *table1 = app.add_subcommand("table1", "Fidelities and efficiencies versus photon number");
    auto *analyze = app.add_subcommand("analyze", "Run the analyzer on one input state");
    auto *swap = app.add_subcommand("swap", "Entanglement swapping over 2 or 3 remote memories");
    for (auto *cmd : {reflection, efficiency, table1, analyze, swap}) {
        add_common(cmd, opts);
    }
    analyze->add_option("state", state, std::string("Input state: ") + kStateGrammar);
    analyze->add_option("--mode", mode, "Scattering model")->check(CLI::IsMember({"ideal", "realistic"}));
    swap->add_option("--pairs", pairs, "Number of hybrid pairs")->check(CLI::IsMember({2, 3}));
    swap->add_option("--mode", mode, "Scattering model")->check(CLI::IsMember({"ideal", "realistic"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App *cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        Settings settings;
        if (!opts.config.empty()) {
            settings.load_file(opts.config);
        }
        for (const auto &a : opts.assignments) {
            settings.set_assignment(a);
        }
        if (opts.seed) {
            settings.set("run.seed", std::to_string(*opts.seed));
        }
        if (opts.shots) {
            settings.set("run.shots", std::to_string(*opts.shots));
        }
        if (name == "analyze") {
            if (!state.empty()) {
                settings.set("analyze.state", state);
            }
            if (!mode.empty()) {
                settings.set("analyze.mode", mode);
            }
        }
        if (name == "swap") {
            if (pairs) {
                settings.set("swap.pairs", std::to_string(*pairs));
            }
            if (!mode.empty()) {
                settings.set("swap.mode", mode);
            }
        }

        RunReport report;
        if (name == "reflection") {
            report = cmd_reflection(settings);
        } else if (name == "efficiency-map") {
            report = cmd_efficiency_map(settings);
        } else if (name == "table1") {
            report = cmd_table1(settings);
        } else if (name == "analyze") {
            report = cmd_analyze(settings);
        } else {
            report = cmd_swap(settings);
        }
        if (opts.timestamp) {
            report.metadata.emplace_back("timestamp", utc_now());
        }

        OutputFormat format = report.tabular() ? OutputFormat::Csv : OutputFormat::Json;
        if (!opts.format.empty()) {
            format = parse_output_format(opts.format);
        }
        std::ostringstream buffer;
        report.write(buffer, format);
        if (opts.out.empty()) {
            std::cout << buffer.str();
        } else {
            std::ofstream file(opts.out, std::ios::binary);
            if (!file) {
                throw std::invalid_argument("cannot write '" + opts.out + "'");
            }
            file << buffer.str();
        }
    } catch (const ghzsim::ConvergenceError &e) {
        std::cerr << "ghzsim " << name << ": " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::invalid_argument &e) {
        std::cerr << "ghzsim " << name << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "ghzsim " << name << ": " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
