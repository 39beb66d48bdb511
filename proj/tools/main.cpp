// starsim command-line driver.
//
//   starsim verify <suite> [--max-n N] [--max-k K] [--states S] [--seed U64]
//   starsim grover --n N --marked BITS [--k K] [--layers L] [--shots S]
//                  [--topology FILE]
//   starsim cost-sweep [--n-min A] [--n-max B] [--k-max K]
//
// Common flags: --seed <u64>, --out <path>, --format {table,csv,records}.
// Exit codes: 0 success, 1 verification failure, 2 argument error.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "starsim/report.hpp"
#include "starsim/version.hpp"

namespace {

// Table format prints the human text; records/csv print machine output
// alone so stdout stays parseable, unless --out redirects it to a file (the
// human summary then goes to stdout as usual).
int emit(const starsim::CommandOutput& out, const std::string& out_path, bool machine_format) {
    const bool machine_only = machine_format && out_path.empty() && out.exit_code != 2;
    if (!out.human.empty() && !machine_only) std::cout << out.human;
    if (!out.machine.empty()) {
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 2;
            }
            f << out.machine;
        } else {
            std::cout << out.machine;
        }
    }
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Star-network distributed quantum computing simulator"};
    app.set_version_flag("--version", std::string(starsim::kVersion));
    app.require_subcommand(1);
    app.fallthrough();  // common flags may follow the subcommand

    std::uint64_t seed = 42;
    std::string out_path;
    std::string format = "table";
    app.add_option("--seed", seed, "PRNG seed, recorded in every output")->capture_default_str();
    app.add_option("--out", out_path, "write machine output to this path");
    app.add_option("--format", format, "table, csv or records")
        ->check(CLI::IsMember({"table", "csv", "records"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run oracle-equivalence suites");
    std::string suite = "all";
    starsim::VerifyOptions vopts;
    verify->add_option("suite", suite, "protocols, mcz, diagonal, swap or all")
        ->check(CLI::IsMember({"protocols", "mcz", "diagonal", "swap", "all"}));
    verify->add_option("--max-n", vopts.max_n, "largest collective gate width")
        ->capture_default_str();
    verify->add_option("--max-k", vopts.max_k, "largest node count")->capture_default_str();
    verify->add_option("--states", vopts.states_per_case, "random input states per (N,k)")
        ->capture_default_str();
    verify->add_option("--cases", vopts.diagonal_cases, "random diagonal-gate cases")
        ->capture_default_str();
    verify->add_option("--threads", vopts.threads, "worker pool size (0 = hardware)")
        ->capture_default_str();

    auto* grover = app.add_subcommand("grover", "run the distributed Grover search");
    starsim::GroverCommand gcmd;
    std::string topology_path;
    grover->add_option("--n", gcmd.n, "search register width")->required();
    grover->add_option("--marked", gcmd.marked, "marked bitstring of length N")->required();
    grover->add_option("--k", gcmd.k, "node count (1 = monolithic fallback)")
        ->capture_default_str();
    grover->add_option("--layers", gcmd.layers, "Grover layers (0 = optimal)")
        ->capture_default_str();
    grover->add_option("--shots", gcmd.shots, "seeded shot batch (0 = exact only)")
        ->capture_default_str();
    grover->add_option("--topology", topology_path, "topology file overriding the balanced layout");

    auto* sweep = app.add_subcommand("cost-sweep", "emit the depth-ratio table");
    starsim::SweepCommand scmd;
    sweep->add_option("--n-min", scmd.n_min, "first N")->capture_default_str();
    sweep->add_option("--n-max", scmd.n_max, "last N")->capture_default_str();
    sweep->add_option("--k-max", scmd.k_max, "largest node count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    starsim::OutputFormat fmt = starsim::OutputFormat::kTable;
    if (format == "csv") fmt = starsim::OutputFormat::kCsv;
    if (format == "records") fmt = starsim::OutputFormat::kRecords;

    try {
        const bool machine_format = fmt != starsim::OutputFormat::kTable;
        if (verify->parsed()) {
            vopts.seed = seed;
            starsim::VerifyCommand cmd{suite, vopts, fmt};
            return emit(starsim::run_verify_command(cmd), out_path, machine_format);
        }
        if (grover->parsed()) {
            gcmd.seed = seed;
            gcmd.format =
                fmt == starsim::OutputFormat::kTable ? starsim::OutputFormat::kRecords : fmt;
            if (!topology_path.empty()) {
                gcmd.topology = starsim::parse_topology_file(topology_path);
            }
            return emit(starsim::run_grover_command(gcmd), out_path, machine_format);
        }
        if (sweep->parsed()) {
            scmd.seed = seed;
            return emit(starsim::run_sweep_command(scmd), out_path, machine_format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
