#include "starsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "starsim/version.hpp"

namespace starsim {

namespace {

using nlohmann::json;

std::string short_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

json topology_json(const StarTopology& topo) {
    json nodes = json::array();
    for (const auto& n : topo.nodes) {
        nodes.push_back({{"data", n.data_qubits}, {"comm", n.comm_qubits}});
    }
    return json{{"nodes", nodes}, {"router", topo.router_qubits}};
}

json case_record(const CaseResult& c, std::uint64_t seed) {
    return json{{"artifact_version", kVersion},
                {"record", "verify-case"},
                {"seed", seed},
                {"case", c.id},
                {"topology", c.topology_desc},
                {"branches", c.branches},
                {"min_fidelity", c.min_fidelity},
                {"ebits_consumed", c.ebits},
                {"ebits_expected", c.expected_ebits},
                {"classical_bits", c.classical_bits},
                {"pass", c.pass},
                {"detail", c.detail}};
}

std::string verify_table(const std::vector<SuiteReport>& reports) {
    std::ostringstream os;
    for (const auto& report : reports) {
        os << "suite " << report.suite << " (" << std::fixed << std::setprecision(2)
           << report.elapsed_seconds << "s)\n";
        os.unsetf(std::ios::fixed);
        for (const auto& c : report.cases) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << c.id
               << std::right << " branches=" << std::setw(4) << c.branches
               << " min_fid=" << short_double(c.min_fidelity) << " ebits=" << c.ebits << "/"
               << c.expected_ebits << " cbits=" << c.classical_bits;
            if (!c.detail.empty()) os << "  [" << c.detail << "]";
            os << "\n";
        }
    }
    return os.str();
}

std::string verify_csv(const std::vector<SuiteReport>& reports) {
    std::ostringstream os;
    os << "suite,case,branches,min_fidelity,ebits,expected_ebits,classical_bits,pass\n";
    for (const auto& report : reports) {
        for (const auto& c : report.cases) {
            os << report.suite << "," << c.id << "," << c.branches << ","
               << short_double(c.min_fidelity) << "," << c.ebits << "," << c.expected_ebits << ","
               << c.classical_bits << "," << (c.pass ? 1 : 0) << "\n";
        }
    }
    return os.str();
}

}  // namespace

CommandOutput run_verify_command(const VerifyCommand& cmd) {
    CommandOutput out;
    const auto& suite = cmd.suite;
    if (suite != "all" && suite != "protocols" && suite != "mcz" && suite != "diagonal" &&
        suite != "swap") {
        out.exit_code = 2;
        out.human = "error: unknown suite '" + suite + "'\n";
        return out;
    }
    if (cmd.opts.max_n < 3 || cmd.opts.max_k < 2 || cmd.opts.states_per_case < 1) {
        out.exit_code = 2;
        out.human = "error: need max_n >= 3, max_k >= 2, states >= 1\n";
        return out;
    }
    // Reject bounds the simulator cannot hold before running anything.
    if (cmd.opts.max_n + 2 * cmd.opts.max_k > kMaxQubits) {
        out.exit_code = 2;
        out.human = "error: max_n + 2*max_k exceeds the " + std::to_string(kMaxQubits) +
                    "-qubit simulator cap\n";
        return out;
    }

    std::vector<SuiteReport> reports;
    if (suite == "all") {
        reports = verify_all(cmd.opts);
    } else if (suite == "protocols") {
        reports.push_back(verify_protocols(cmd.opts));
    } else if (suite == "mcz") {
        reports.push_back(verify_mcz(cmd.opts));
    } else if (suite == "diagonal") {
        reports.push_back(verify_diagonal(cmd.opts));
    } else {
        reports.push_back(verify_swap(cmd.opts));
    }

    bool all_pass = true;
    long total = 0;
    for (const auto& r : reports) {
        all_pass = all_pass && r.all_pass();
        total += static_cast<long>(r.cases.size());
    }

    std::ostringstream summary;
    summary << verify_table(reports);
    summary << (all_pass ? "OK" : "FAILED") << ": " << total << " case(s), seed "
            << cmd.opts.seed << "\n";
    if (!all_pass) {
        for (const auto& r : reports) {
            for (const auto& c : r.cases) {
                if (!c.pass) {
                    summary << "failing case: " << c.id << " seed=" << cmd.opts.seed
                            << " min_fid=" << short_double(c.min_fidelity);
                    if (!c.detail.empty()) summary << " " << c.detail;
                    summary << "\n";
                }
            }
        }
    }
    out.human = summary.str();

    if (cmd.format == OutputFormat::kRecords) {
        std::ostringstream os;
        for (const auto& r : reports) {
            for (const auto& c : r.cases) os << case_record(c, cmd.opts.seed).dump() << "\n";
        }
        out.machine = os.str();
    } else if (cmd.format == OutputFormat::kCsv) {
        out.machine = verify_csv(reports);
    }
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

CommandOutput run_grover_command(const GroverCommand& cmd) {
    CommandOutput out;
    if (cmd.n < 2 || cmd.n > kMaxQubits) {
        out.exit_code = 2;
        out.human = "error: need 2 <= N <= " + std::to_string(kMaxQubits) + "\n";
        return out;
    }
    if (static_cast<int>(cmd.marked.size()) != cmd.n ||
        cmd.marked.find_first_not_of("01") != std::string::npos) {
        out.exit_code = 2;
        out.human = "error: marked must be a binary string of length N\n";
        return out;
    }
    if (cmd.k < 1 || cmd.k > cmd.n || cmd.layers < 0 || cmd.shots < 0) {
        out.exit_code = 2;
        out.human = "error: need 1 <= k <= N, layers >= 0, shots >= 0\n";
        return out;
    }

    GroverSpec spec;
    spec.num_qubits = cmd.n;
    spec.marked = cmd.marked;
    spec.layers = cmd.layers;
    spec.partition = PartitionPlan::balanced(cmd.n, cmd.k);

    StarTopology topo = cmd.topology ? *cmd.topology : grover_topology(spec.partition);
    if (cmd.topology) {
        // A supplied topology must still carry the partition: per-node data
        // counts become the plan.
        if (static_cast<int>(topo.nodes.size()) != cmd.k) {
            out.exit_code = 2;
            out.human = "error: topology file has " + std::to_string(topo.nodes.size()) +
                        " nodes, expected k=" + std::to_string(cmd.k) + "\n";
            return out;
        }
        spec.partition.per_node.clear();
        for (const auto& node : topo.nodes) spec.partition.per_node.push_back(node.data_qubits);
        try {
            spec.partition.validate();
        } catch (const std::exception& e) {
            out.exit_code = 2;
            out.human = std::string("error: topology does not fit N: ") + e.what() + "\n";
            return out;
        }
    }
    if (topo.total_qubits() > kMaxQubits) {
        out.exit_code = 2;
        out.human = "error: N + 2k exceeds the simulator cap\n";
        return out;
    }

    GroverResult result;
    try {
        Network net(topo, RunPolicy::seeded(cmd.seed));
        result = run_distributed_grover(spec, net);
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.human = std::string("error: ") + e.what() + "\n";
        return out;
    }

    json record{{"artifact_version", kVersion},
                {"record", "grover"},
                {"seed", cmd.seed},
                {"n", cmd.n},
                {"marked", cmd.marked},
                {"k", cmd.k},
                {"layers_used", result.layers_used},
                {"topology", topology_json(topo)},
                {"ebits_consumed", result.cost.ebits},
                {"ebits_created", result.cost.ebits_created},
                {"classical_bits", result.cost.classical_bits},
                {"cx_depth_estimate", result.cost.cx_depth},
                {"success_probability", result.success_probability},
                {"distribution", result.outcome_distribution}};
    if (cmd.shots > 0) {
        // One seeded shot batch over the exact distribution.
        std::mt19937_64 rng(mix_seed(cmd.seed, 0x5407ULL));
        std::map<std::string, long> counts;
        for (int s = 0; s < cmd.shots; ++s) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            double acc = 0.0;
            std::size_t idx = result.outcome_distribution.size() - 1;
            for (std::size_t i = 0; i < result.outcome_distribution.size(); ++i) {
                acc += result.outcome_distribution[i];
                if (u < acc) {
                    idx = i;
                    break;
                }
            }
            std::string bits(cmd.n, '0');
            for (int q = 0; q < cmd.n; ++q) {
                if (idx & (std::size_t{1} << (cmd.n - 1 - q))) bits[q] = '1';
            }
            counts[bits] += 1;
        }
        record["shots"] = cmd.shots;
        record["counts"] = counts;
    }

    std::ostringstream human;
    human << "grover N=" << cmd.n << " marked=" << cmd.marked << " k=" << cmd.k
          << " layers=" << result.layers_used << " seed=" << cmd.seed << "\n"
          << "  success probability: " << short_double(result.success_probability) << "\n"
          << "  ebits consumed: " << result.cost.ebits
          << "  classical bits: " << result.cost.classical_bits
          << "  total qubits: " << topo.total_qubits() << "\n";
    out.human = human.str();

    if (cmd.format == OutputFormat::kCsv) {
        std::ostringstream os;
        os << "basis_index,bitstring,probability\n";
        for (std::size_t i = 0; i < result.outcome_distribution.size(); ++i) {
            std::string bits(cmd.n, '0');
            for (int q = 0; q < cmd.n; ++q) {
                if (i & (std::size_t{1} << (cmd.n - 1 - q))) bits[q] = '1';
            }
            os << i << "," << bits << "," << short_double(result.outcome_distribution[i]) << "\n";
        }
        out.machine = os.str();
    } else {
        out.machine = record.dump() + "\n";
    }
    return out;
}

CommandOutput run_sweep_command(const SweepCommand& cmd) {
    CommandOutput out;
    // An empty N range yields a header-only file.
    if ((cmd.n_max >= cmd.n_min && cmd.n_min < 3) || cmd.k_max < 2) {
        out.exit_code = 2;
        out.human = "error: need N >= 3 and k_max >= 2\n";
        return out;
    }
    std::vector<int> n_list;
    for (int n = cmd.n_min; n <= cmd.n_max; ++n) n_list.push_back(n);
    const auto rows = sweep_fig9(n_list, cmd.k_max);
    out.machine = sweep_csv(rows);
    std::ostringstream human;
    human << "cost sweep: " << rows.size() << " row(s), N in [" << cmd.n_min << ", " << cmd.n_max
          << "], k <= " << cmd.k_max << ", seed " << cmd.seed << "\n";
    out.human = human.str();
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "N,k,monolithic_depth,distributed_depth,ratio,optimal_k,speedup\n";
    for (const auto& r : rows) {
        os << r.n << "," << r.k << "," << r.monolithic_depth << "," << r.distributed_depth << ","
           << short_double(r.ratio) << "," << r.optimal_k << "," << short_double(r.speedup)
           << "\n";
    }
    return os.str();
}

StarTopology parse_topology_json(const std::string& text) {
    json j = json::parse(text);
    StarTopology topo;
    if (!j.contains("nodes") || !j["nodes"].is_array() || !j.contains("router")) {
        throw std::invalid_argument("topology: need {\"nodes\": [...], \"router\": n}");
    }
    for (const auto& node : j["nodes"]) {
        topo.nodes.push_back({node.at("data").get<int>(), node.at("comm").get<int>()});
    }
    topo.router_qubits = j["router"].get<int>();
    return topo;
}

StarTopology parse_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("topology: cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_topology_json(buf.str());
}

}  // namespace starsim
