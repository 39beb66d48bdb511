#include "starsim/report.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "starsim/version.hpp"

using namespace starsim;

namespace {

GroverCommand grover_4_1011() {
    GroverCommand cmd;
    cmd.n = 4;
    cmd.marked = "1011";
    cmd.k = 2;
    cmd.seed = 42;
    return cmd;
}

}  // namespace

TEST(GroverCommand, RecordsAreByteIdentical) {
    const auto a = run_grover_command(grover_4_1011());
    const auto b = run_grover_command(grover_4_1011());
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.machine, b.machine);
    EXPECT_EQ(a.human, b.human);
}

TEST(GroverCommand, RecordCarriesRequiredFields) {
    const auto out = run_grover_command(grover_4_1011());
    const auto record = nlohmann::json::parse(out.machine);
    EXPECT_EQ(record.at("artifact_version").get<std::string>(), kVersion);
    EXPECT_EQ(record.at("seed").get<std::uint64_t>(), 42u);
    EXPECT_EQ(record.at("n").get<int>(), 4);
    EXPECT_EQ(record.at("k").get<int>(), 2);
    EXPECT_EQ(record.at("layers_used").get<int>(), 3);
    EXPECT_EQ(record.at("ebits_consumed").get<long>(), 12);
    EXPECT_EQ(record.at("topology").at("router").get<int>(), 2);
    EXPECT_EQ(record.at("topology").at("nodes").size(), 2u);
    // success = sin^2(7 asin(1/4)) ~ 0.9613 at the optimal 3 layers.
    EXPECT_NEAR(record.at("success_probability").get<double>(), 0.9613, 1e-4);
    EXPECT_EQ(record.at("distribution").size(), 16u);
}

TEST(GroverCommand, SingleNodeFallsBackWithZeroEbits) {
    GroverCommand cmd = grover_4_1011();
    cmd.k = 1;
    const auto out = run_grover_command(cmd);
    EXPECT_EQ(out.exit_code, 0);
    const auto record = nlohmann::json::parse(out.machine);
    EXPECT_EQ(record.at("ebits_consumed").get<long>(), 0);
}

TEST(GroverCommand, ValidatesArguments) {
    GroverCommand bad = grover_4_1011();
    bad.marked = "10";
    EXPECT_EQ(run_grover_command(bad).exit_code, 2);

    bad = grover_4_1011();
    bad.marked = "1x11";
    EXPECT_EQ(run_grover_command(bad).exit_code, 2);

    bad = grover_4_1011();
    bad.n = 22;  // N + 2k beyond the cap
    bad.marked = std::string(22, '1');
    bad.k = 4;
    EXPECT_EQ(run_grover_command(bad).exit_code, 2);
}

TEST(GroverCommand, ShotsAreSeededAndStable) {
    GroverCommand cmd = grover_4_1011();
    cmd.shots = 100;
    const auto a = run_grover_command(cmd);
    const auto b = run_grover_command(cmd);
    EXPECT_EQ(a.machine, b.machine);
    const auto record = nlohmann::json::parse(a.machine);
    EXPECT_EQ(record.at("shots").get<int>(), 100);
    long total = 0;
    for (const auto& [bits, count] : record.at("counts").items()) {
        EXPECT_EQ(bits.size(), 4u);
        total += count.get<long>();
    }
    EXPECT_EQ(total, 100);
}

TEST(GroverCommand, TopologyOverrideMustMatchK) {
    GroverCommand cmd = grover_4_1011();
    StarTopology topo;
    topo.nodes = {{2, 1}, {2, 1}, {1, 1}};
    topo.router_qubits = 3;
    cmd.topology = topo;  // 3 nodes but k = 2
    EXPECT_EQ(run_grover_command(cmd).exit_code, 2);

    topo.nodes = {{2, 1}, {2, 1}};
    topo.router_qubits = 2;
    cmd.topology = topo;
    EXPECT_EQ(run_grover_command(cmd).exit_code, 0);
}

TEST(TopologyFile, ParsesMinimalSchema) {
    const auto topo = parse_topology_json(
        R"({"nodes": [{"data": 2, "comm": 1}, {"data": 2, "comm": 1}], "router": 2})");
    ASSERT_EQ(topo.nodes.size(), 2u);
    EXPECT_EQ(topo.nodes[0].data_qubits, 2);
    EXPECT_EQ(topo.nodes[0].comm_qubits, 1);
    EXPECT_EQ(topo.router_qubits, 2);

    EXPECT_THROW(parse_topology_json(R"({"router": 2})"), std::exception);
    EXPECT_THROW(parse_topology_json("not json"), std::exception);
    EXPECT_THROW(parse_topology_file("/nonexistent/topo.json"), std::invalid_argument);
}

TEST(SweepCommand, EmitsExpectedRowAndHeader) {
    SweepCommand cmd;
    cmd.n_min = 8;
    cmd.n_max = 32;
    cmd.k_max = 10;
    const auto out = run_sweep_command(cmd);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.machine.rfind("N,k,monolithic_depth,distributed_depth,ratio,optimal_k,speedup\n",
                                0),
              0u);
    EXPECT_NE(out.machine.find("\n18,6,96,42,0.4375,6,"), std::string::npos);
}

TEST(SweepCommand, EmptyRangeGivesHeaderOnly) {
    SweepCommand cmd;
    cmd.n_min = 20;
    cmd.n_max = 10;
    cmd.k_max = 4;
    const auto out = run_sweep_command(cmd);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.machine, "N,k,monolithic_depth,distributed_depth,ratio,optimal_k,speedup\n");
}

TEST(SweepCommand, RejectsBadBounds) {
    SweepCommand cmd;
    cmd.n_min = 2;
    cmd.n_max = 10;
    cmd.k_max = 4;
    EXPECT_EQ(run_sweep_command(cmd).exit_code, 2);
    cmd.n_min = 8;
    cmd.k_max = 1;
    EXPECT_EQ(run_sweep_command(cmd).exit_code, 2);
}

TEST(SweepCommand, IsReproducible) {
    SweepCommand cmd;
    cmd.n_min = 8;
    cmd.n_max = 20;
    cmd.k_max = 6;
    EXPECT_EQ(run_sweep_command(cmd).machine, run_sweep_command(cmd).machine);
}

TEST(VerifyCommand, RejectsBadArgumentsBeforeSimulating) {
    VerifyCommand cmd;
    cmd.suite = "nonsense";
    EXPECT_EQ(run_verify_command(cmd).exit_code, 2);

    cmd.suite = "all";
    cmd.opts.max_n = 30;  // 30 + 2*max_k > 24-qubit cap
    EXPECT_EQ(run_verify_command(cmd).exit_code, 2);
}

TEST(VerifyCommand, SmallSwapSuitePasses) {
    VerifyCommand cmd;
    cmd.suite = "swap";
    cmd.format = OutputFormat::kRecords;
    const auto out = run_verify_command(cmd);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_NE(out.human.find("PASS"), std::string::npos);
    const auto record = nlohmann::json::parse(out.machine.substr(0, out.machine.find('\n')));
    EXPECT_TRUE(record.at("pass").get<bool>());
    EXPECT_EQ(record.at("ebits_consumed").get<long>(), 2);
}

TEST(VerifyCommand, RecordsAreByteIdentical) {
    VerifyCommand cmd;
    cmd.suite = "protocols";
    cmd.opts.max_n = 4;
    cmd.opts.max_k = 2;
    cmd.format = OutputFormat::kRecords;
    const auto a = run_verify_command(cmd);
    const auto b = run_verify_command(cmd);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.machine, b.machine);
}
