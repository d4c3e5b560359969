// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "hoprisk/closed_form.hpp"
#include "hoprisk/exact.hpp"
#include "hoprisk/generators.hpp"
#include "hoprisk/network_io.hpp"
#include "hoprisk/scoring.hpp"
#include "hoprisk/simulation.hpp"
#include "hoprisk/stats.hpp"
#include "k5_reference.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace hoprisk;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hoprisk");
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("hoprisk_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// 1: the exact command reproduces every reference K5 cell at depths 2..4
Verdict table_reproduction(const fs::path& dir) {
    const auto t0 = Clock::now();
    const std::string net = (dir / "k5.json").string();
    save_json(testing::k5_network(), net);
    double worst = 0.0;
    int cells = 0;
    for (int depth = 2; depth <= 4; ++depth) {
        const std::string out = (dir / ("k5_L" + std::to_string(depth) + ".csv")).string();
        if (run_cli({"exact", "--network", net, "-L", std::to_string(depth), "--out", out}) != 0)
            return {false, "exact command failed"};
        std::istringstream in(slurp(out));
        const JointPmf pmf = read_pmf_csv(in);
        for (int x1 = 0; x1 <= 2; ++x1)
            for (int x2 = 0; x2 <= 3; ++x2) {
                worst = std::max(worst, std::abs(testing::cell(pmf, x1, x2) - testing::k5_table[depth - 2][x1][x2]));
                ++cells;
            }
    }
    const double secs = seconds_since(t0);
    return {worst <= 5e-5 && secs < 1.0,
            std::to_string(cells) + " cells, max |diff| " + fmt("%.2e", worst) + " (tol 5e-5), " + fmt("%.3f", secs) + " s"};
}

// 2: exact engine against full enumeration of all coin outcomes
Verdict oracle_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    int graphs = 0;
    for (; graphs < 60; ++graphs) {
        const std::size_t n = 1 + rng() % 5;
        const NetworkModel net = oracle::random_network(rng, n, 6, 1 + rng() % std::min<std::size_t>(n, 3));
        for (int depth = 1; depth <= 3; ++depth)
            worst = std::max(worst, testing::max_abs_diff(joint_pmf(net, depth), oracle::brute_force_pmf(net, depth)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-12 && secs < 60.0,
            std::to_string(graphs) + " graphs x L=1..3, max |diff| " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

// 3: closed forms against the engine on the constructed topologies
Verdict closed_form_agreement() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_complete = 0.0, worst_star = 0.0, worst_bip = 0.0;
    int n_complete = 0, n_star = 0, n_bip = 0;

    while (n_complete < 25) {
        const int m = 1 + static_cast<int>(rng() % 3);
        std::vector<int> sizes;
        int total = 0;
        for (int t = 0; t < m; ++t) {
            sizes.push_back(1 + static_cast<int>(rng() % 4));
            total += sizes.back();
        }
        if (total > 8) continue;
        const double p = unit(rng), q = unit(rng);
        const NetworkModel net = make_complete(sizes, p, q);
        for (int depth = 1; depth <= 4; ++depth)
            worst_complete = std::max(worst_complete, testing::max_abs_diff(complete_homog_pmf({sizes, p, q, depth}), joint_pmf(net, depth)));
        ++n_complete;
    }
    for (; n_star < 25; ++n_star) {
        const TwoClassParams params{unit(rng), unit(rng), unit(rng), unit(rng)};
        const int n = 2 + static_cast<int>(rng() % 7);
        const NetworkModel net = make_star(static_cast<std::size_t>(n), params);
        for (int depth = 1; depth <= 2; ++depth)
            worst_star = std::max(worst_star, testing::max_abs_diff(star_pmf(params, n, depth), joint_pmf(net, depth)));
    }
    for (; n_bip < 25; ++n_bip) {
        const TwoClassParams params{unit(rng), unit(rng), unit(rng), unit(rng)};
        const int n1 = 1 + static_cast<int>(rng() % 4), n2 = 1 + static_cast<int>(rng() % 4);
        worst_bip = std::max(worst_bip, testing::max_abs_diff(bipartite_pmf(params, n1, n2), joint_pmf(make_complete_bipartite(n1, n2, params), 1)));
    }
    const bool ok = worst_complete <= 1e-12 && worst_star <= 1e-12 && worst_bip <= 1e-12;
    return {ok, "complete " + std::to_string(n_complete) + " (" + fmt("%.1e", worst_complete) + "), star " +
                    std::to_string(n_star) + " (" + fmt("%.1e", worst_star) + "), bipartite " + std::to_string(n_bip) +
                    " (" + fmt("%.1e", worst_bip) + ")"};
}

// 4: every PMF the library produces sums to one
Verdict normalization() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int pmfs = 0;
    auto check = [&](const JointPmf& pmf) {
        worst = std::max(worst, std::abs(pmf.total() - 1.0));
        ++pmfs;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const NetworkModel net = oracle::random_network(rng, n, 14, 1 + rng() % std::min<std::size_t>(n, 3));
        const int depth = static_cast<int>(rng() % 5);
        check(joint_pmf(net, depth));
        if (depth >= 1) check(empirical_pmf(simulate_runs(net, depth, 2000, rng()), depth));

        std::vector<int> sizes{1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4)};
        check(complete_homog_pmf({sizes, unit(rng), unit(rng), depth}));
        const TwoClassParams params{unit(rng), unit(rng), unit(rng), unit(rng)};
        check(star_pmf(params, 2 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 2)));
        check(bipartite_pmf(params, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4)));
    }
    return {worst <= 1e-9, std::to_string(pmfs) + " PMFs across all engines, max |sum-1| " + fmt("%.1e", worst)};
}

// 5: simulation against the reference depth-2 table, plus per-run nesting
Verdict monte_carlo() {
    const NetworkModel net = testing::k5_network();
    const std::size_t runs = 100000;
    const std::uint64_t seed = 1;
    const int traced_depth = 4;

    JointPmf hist({2, 3});
    std::size_t nested = 0;
    for (std::size_t k = 0; k < runs; ++k) {
        RunStream rng(seed, k);
        const CompromiseTrace t = single_run(net, traced_depth, rng);
        // the depth-h set is the union of fronts 0..h; it only nests if no
        // front revisits a node, and the recorded counts must describe it
        std::set<NodeId> so_far;
        bool ok = t.fronts.size() == traced_depth + 1U;
        for (std::size_t h = 0; ok && h < t.fronts.size(); ++h) {
            for (NodeId v : t.fronts[h]) ok = so_far.insert(v).second && ok;
            std::vector<int> counts(2, 0);
            for (NodeId v : so_far) ++counts[net.type_of(v)];
            ok = ok && counts == t.cumulative[h];
        }
        nested += ok;
        hist.at(t.cumulative[2]) += 1.0 / static_cast<double>(runs);
    }

    // the batch path must see the same runs
    const JointPmf batch = empirical_pmf(simulate_runs(net, 2, runs, seed), 2);
    const bool same_runs = testing::max_abs_diff(batch, hist) <= 1e-12;

    double worst_z = 0.0;
    for (int x1 = 0; x1 <= 2; ++x1)
        for (int x2 = 0; x2 <= 3; ++x2) {
            const double ref = testing::k5_table[0][x1][x2];
            const double se = std::sqrt(ref * (1.0 - ref) / static_cast<double>(runs));
            worst_z = std::max(worst_z, std::abs(testing::cell(batch, x1, x2) - ref) / se);
        }
    return {worst_z <= 4.0 && nested == runs && same_runs,
            "K=100000, max cell deviation " + fmt("%.2f", worst_z) + " SE (limit 4), nesting held in " +
                std::to_string(nested) + "/" + std::to_string(runs) + " runs"};
}

// 6: orthant order when depth, p or Q grows
Verdict stochastic_order() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_l = 0.0, worst_p = 0.0, worst_q = 0.0;
    bool ok = true;
    int instances = 0;
    for (; instances < 40; ++instances) {
        const std::size_t n = 2 + rng() % 6;
        const NetworkModel net = oracle::random_network(rng, n, 14, 1 + rng() % 2);
        const int depth = 1 + static_cast<int>(rng() % 3);
        const JointPmf base = joint_pmf(net, depth);

        const OrderReport by_l = check_orthant_monotone(base, joint_pmf(net, depth + 1), 1e-12);

        auto nodes = net.node_specs();
        for (auto& s : nodes) s.p += (1.0 - s.p) * unit(rng);
        const OrderReport by_p = check_orthant_monotone(base, joint_pmf(build_network(nodes, net.edge_specs()), depth), 1e-12);

        auto edges = net.edge_specs();
        for (auto& e : edges) {
            e.q_uv += (1.0 - e.q_uv) * unit(rng);
            e.q_vu += (1.0 - e.q_vu) * unit(rng);
        }
        const OrderReport by_q = check_orthant_monotone(base, joint_pmf(build_network(net.node_specs(), edges), depth), 1e-12);

        ok = ok && by_l.passed && by_p.passed && by_q.passed;
        worst_l = std::max(worst_l, by_l.max_violation);
        worst_p = std::max(worst_p, by_p.max_violation);
        worst_q = std::max(worst_q, by_q.max_violation);
    }
    return {ok, std::to_string(instances) + " instances; max violation L " + fmt("%.1e", worst_l) + ", p " +
                    fmt("%.1e", worst_p) + ", Q " + fmt("%.1e", worst_q) + " (tol 1e-12)"};
}

// 7: qualitative depth trends on the 200-node preferential-attachment network
Verdict depth_trends() {
    const auto t0 = Clock::now();
    const double p[] = {0.05, 0.15};
    const double q[] = {0.2, 0.3};
    NetworkModel net = assign_types_by_degree(generate_ba({200, 2, 5, SeedGraph::complete}, 1), 20);
    net = assign_type_parameters(net, p, q);
    const int max_depth = 10;
    const SampleMatrix s = simulate_runs(net, max_depth, 10000, 1);

    std::vector<MomentSummary> moments;
    for (int l = 1; l <= max_depth; ++l) moments.push_back(marginal_moments(s, l));
    bool monotone = true;
    for (int l = 1; l < max_depth; ++l)
        for (std::size_t t = 0; t < 2; ++t)
            monotone = monotone && moments[l].types[t].mean_proportion >= moments[l - 1].types[t].mean_proportion;

    double jump[2];
    for (std::size_t t = 0; t < 2; ++t)
        jump[t] = moments[1].types[t].mean_proportion / moments[0].types[t].mean_proportion - 1.0;
    const bool jumps = jump[0] > 0.2 && jump[1] > 0.2;

    const DependenceSummary at2 = correlations(s, 2).at(0).measures;
    const DependenceSummary at10 = correlations(s, 10).at(0).measures;
    const bool pearson_down = *at10.pearson < *at2.pearson;
    const bool kendall_down = *at10.kendall < *at2.kendall;
    const bool spearman_down = *at10.spearman < *at2.spearman;
    const double secs = seconds_since(t0);

    auto yes = [](bool b) { return b ? "ok" : "NOT MET"; };
    return {monotone && jumps && pearson_down && kendall_down && spearman_down && secs < 120.0,
            std::string("means non-decreasing ") + yes(monotone) + "; L1->L2 jump " + fmt("%.0f%%", 100 * jump[0]) +
                "/" + fmt("%.0f%%", 100 * jump[1]) + " " + yes(jumps) + "; L2 vs L10 pearson " +
                fmt("%.3f", *at2.pearson) + "->" + fmt("%.3f", *at10.pearson) + " " + yes(pearson_down) +
                ", kendall " + fmt("%.3f", *at2.kendall) + "->" + fmt("%.3f", *at10.kendall) + " " +
                yes(kendall_down) + ", spearman " + fmt("%.3f", *at2.spearman) + "->" + fmt("%.3f", *at10.spearman) +
                " " + yes(spearman_down) + "; " + fmt("%.1f", secs) + " s"};
}

// 8: the synchrophasor rule file
Verdict scoring() {
    const ScoreRuleSet rules = load_rules(std::string(HOPRISK_DATA_DIR) + "/synchrophasor_rules.json", std::vector<int>{5, 3, 2});
    const std::vector<std::pair<std::vector<int>, int>> listed = {
        {{0, 0, 0}, 0}, {{1, 0, 0}, 1}, {{2, 0, 0}, 2}, {{3, 0, 0}, 3}, {{0, 1, 0}, 3}, {{0, 2, 0}, 3},
        {{1, 1, 0}, 4}, {{1, 3, 0}, 4}, {{2, 1, 0}, 4}, {{2, 2, 0}, 4}, {{3, 1, 0}, 4}, {{3, 3, 0}, 4},
        {{4, 0, 0}, 4}, {{0, 0, 1}, 5}, {{0, 0, 2}, 5}, {{4, 1, 0}, 5}, {{4, 3, 0}, 5}, {{5, 0, 0}, 5},
    };
    int matched = 0;
    for (const auto& [x, score] : listed) matched += score_vector(rules, x) == score;

    std::mt19937_64 rng(8);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const NetworkModel net = oracle::random_network(rng, 8, 16, 3);
        double sum = 0.0;
        for (const auto& [score, prob] : score_distribution(rules, joint_pmf(net, 1 + static_cast<int>(rng() % 3)))) sum += prob;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {matched == static_cast<int>(listed.size()) && worst <= 1e-9,
            std::to_string(matched) + "/" + std::to_string(listed.size()) + " listed vectors scored as tabulated, max |mass-1| " +
                fmt("%.1e", worst)};
}

// 9: every command twice, byte-compare every output and manifest
Verdict determinism(const fs::path& root) {
    const fs::path dir = root / "det";
    fs::create_directories(dir);
    auto p = [&](const std::string& name) { return (dir / name).string(); };
    const std::string rules = std::string(HOPRISK_DATA_DIR) + "/synchrophasor_rules.json";
    const std::vector<std::vector<std::string>> commands = {
        {"generate", "ba", "--nodes", "200", "--top-k", "20", "--p", "0.05,0.15", "--q", "0.2,0.3", "--seed", "3", "--out", p("ba.json")},
        {"generate", "complete", "--sizes", "2,3", "--p", "0.2", "--q", "0.1", "--out", p("k5.json")},
        {"generate", "complete", "--sizes", "5,3,2", "--p", "0.1", "--q", "0.3", "--out", p("k10.json")},
        {"generate", "star", "--nodes", "5", "--p-hub", "0.1", "--p-leaf", "0.2", "--q-hub-leaf", "0.3", "--q-leaf-hub", "0.4", "--out", p("star.json")},
        {"generate", "bipartite", "--sizes", "2,3", "--p-one", "0.1", "--p-two", "0.2", "--q-one-two", "0.3", "--q-two-one", "0.4", "--out", p("bip.json")},
        {"exact", "--network", p("k5.json"), "-L", "3", "--out", p("k5.csv")},
        {"exact", "--network", p("k10.json"), "-L", "2", "--out", p("k10.csv")},
        {"simulate", "--network", p("ba.json"), "-L", "5", "-K", "2000", "--seed", "11", "--out", p("ba_samples.csv")},
        {"simulate", "--network", p("k5.json"), "-L", "3", "-K", "2000", "--seed", "12", "--threads", "4", "--out", p("k5_samples.csv")},
        {"stats", "--samples", p("ba_samples.csv"), "--out", p("ba_stats")},
        {"stats", "--pmf", p("k5.csv"), "-L", "3", "--out", p("k5_stats")},
        {"score", "--pmf", p("k10.csv"), "--rules", rules, "--out", p("k10_scores.csv")},
        {"order-check", "--network", p("k5.json"), "--depths", "1,2,3,4", "--out", p("order.txt")},
    };

    auto snapshot = [&]() {
        std::map<std::string, std::string> files;
        for (const auto& entry : fs::directory_iterator(dir)) files[entry.path().filename().string()] = slurp(entry.path());
        return files;
    };
    for (const auto& c : commands)
        if (run_cli(c) != 0) return {false, "command failed: " + c[0]};
    const auto first = snapshot();
    for (const auto& c : commands)
        if (run_cli(c) != 0) return {false, "command failed on re-run: " + c[0]};
    const auto second = snapshot();

    int differing = 0;
    for (const auto& [name, bytes] : first) {
        auto it = second.find(name);
        differing += it == second.end() || it->second != bytes;
    }
    return {differing == 0 && first.size() == second.size(),
            std::to_string(commands.size()) + " commands, " + std::to_string(first.size()) + " files, " +
                std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
    const fs::path dir = scratch_dir();
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"K5 table reproduction", [&] { return table_reproduction(dir); }},
        {"brute-force oracle equivalence", oracle_equivalence},
        {"closed-form/engine agreement", closed_form_agreement},
        {"normalization", normalization},
        {"Monte Carlo consistency", monte_carlo},
        {"stochastic-order properties", stochastic_order},
        {"BA-200 depth trends", depth_trends},
        {"scoring rules", scoring},
        {"determinism", [&] { return determinism(dir); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("criterion %zu: %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(dir);
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
