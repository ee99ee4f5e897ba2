// Copyright 2026 The chargecirc Authors
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
//
// simulate: ensemble runs of charge-conserving random circuits.
//
//   simulate --spins 20 --depth 30 --ensemble 30 --seed 7 --alphas 2,3,inf \
//            --mode entropy|transport|proof|all --out run.csv
//
// Writes run.csv and run.summary.json. Exit codes: 0 success, 2 invalid
// config, 3 invariant violation, 4 I/O failure, 5 no data.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "chargecirc/circuit.hpp"
#include "chargecirc/experiment.hpp"

using namespace chargecirc;

int main(int argc, char **argv) {
    CLI::App app{"Charge-conserving brick-wall circuit simulator"};
    app.option_defaults()->always_capture_default(false);

    std::string config_file;
    std::string dump_circuit;
    app.add_option("--config", config_file, "Flat key=value file; flags override its entries");
    app.add_option("--dump-circuit", dump_circuit, "Write the gate table of realization 0 to this path");

    const std::vector<std::pair<std::string, std::string>> flags = {
        {"spins", "Number of spins 2n (even, 4..28)"},
        {"depth", "Number of brick-wall layers T"},
        {"ensemble", "Number of realizations"},
        {"seed", "Master seed"},
        {"alphas", "Comma-separated Renyi indices, 'inf' for the min-entropy"},
        {"mode", "entropy | transport | proof | all"},
        {"measure-every", "Measurement cadence in layers"},
        {"m-const", "K in m(t) = ceil(K sqrt(t ln t))"},
        {"p-degree", "Degree d of p(t) = t^d"},
        {"workers", "Worker threads"},
        {"out", "CSV output path"},
        {"log-then-mean", "Fit the mean of ln entropy instead of ln of the mean"},
        {"spread-t-lo", "First t of the domain-wall slope window"},
        {"spread-t-hi", "Last t of the domain-wall slope window"},
        {"bootstrap", "Bootstrap resamples for growth-exponent intervals"},
        {"identity-circuit", "Replace every gate by the identity (testing)"},
    };
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option *> options;
    for (const auto &[name, help] : flags) {
        options[name] = app.add_option("--" + name, values[name], help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitInvalidConfig;
    }

    RunConfig config;
    try {
        std::map<std::string, std::string> pairs;
        if (!config_file.empty()) {
            pairs = read_config_file(config_file);
        }
        for (const auto &[name, opt] : options) {
            if (opt->count() > 0) {
                pairs[name] = values[name];
            }
        }
        config = config_from_pairs(pairs);
    } catch (const ConfigError &e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const IoError &e) {
        std::cerr << "I/O failure: " << e.what() << '\n';
        return kExitIoFailure;
    }

    try {
        if (!dump_circuit.empty()) {
            std::ofstream out(dump_circuit);
            if (!out) {
                throw IoError("cannot open " + dump_circuit);
            }
            const auto spec = config.identity_circuit
                                  ? CircuitSpec::identity(config.num_spins, config.depth)
                                  : CircuitSpec::random(config.num_spins, config.depth,
                                                        realization_seed(config.master_seed, 0));
            write_circuit_table(out, spec);
        }
        const RunResult result = run_experiment(config);
        return emit_summary(std::cout, result.summary);
    } catch (const IoError &e) {
        std::cerr << "I/O failure: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const ConfigError &e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
}
