// Command implementations shared by the CLI and the acceptance suite.
// Everything here is a pure function of its inputs, so two invocations with
// the same configuration produce byte-identical output.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starsim/cost_model.hpp"
#include "starsim/grover.hpp"
#include "starsim/network.hpp"
#include "starsim/verify.hpp"

namespace starsim {

enum class OutputFormat { kTable, kCsv, kRecords };

struct CommandOutput {
    int exit_code = 0;       // 0 ok, 1 verification failure, 2 argument error
    std::string human;       // table / status text for stdout
    std::string machine;     // record lines or CSV, also written to --out
};

struct VerifyCommand {
    std::string suite = "all";  // protocols | mcz | diagonal | swap | all
    VerifyOptions opts;
    OutputFormat format = OutputFormat::kTable;
};
CommandOutput run_verify_command(const VerifyCommand& cmd);

struct GroverCommand {
    int n = 4;
    std::string marked;
    int k = 2;
    int layers = 0;  // 0 = optimal
    int shots = 0;   // 0 = exact distribution only
    std::uint64_t seed = 42;
    std::optional<StarTopology> topology;  // overrides the balanced k-node layout
    OutputFormat format = OutputFormat::kRecords;
};
CommandOutput run_grover_command(const GroverCommand& cmd);

struct SweepCommand {
    int n_min = 8;
    int n_max = 32;
    int k_max = 10;
    std::uint64_t seed = 42;
};
CommandOutput run_sweep_command(const SweepCommand& cmd);

// Topology file: {"nodes": [{"data": 2, "comm": 1}, ...], "router": 2}
StarTopology parse_topology_file(const std::string& path);
StarTopology parse_topology_json(const std::string& text);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace starsim
