#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "hoprisk/errors.hpp"
#include "hoprisk/exact.hpp"
#include "hoprisk/generators.hpp"
#include "hoprisk/network_io.hpp"
#include "hoprisk/scoring.hpp"
#include "hoprisk/simulation.hpp"
#include "hoprisk/stats.hpp"

#ifndef HOPRISK_VERSION
#define HOPRISK_VERSION "dev"
#endif

namespace hoprisk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : "NA"; }

// Collects inputs, parameters and outputs of one command and writes the
// manifest next to the primary output.
class Manifest {
public:
    explicit Manifest(std::string command) { doc_["command"] = std::move(command); }

    void input(const std::string& role, const std::string& path) {
        doc_["inputs"][role] = {{"path", path}, {"sha256", sha256_hex(read_file(path))}};
    }
    json& parameters() { return doc_["parameters"]; }

    void output(const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ParseError("cannot write " + path);
        out << content;
        if (!out) throw ParseError("failed writing " + path);
        outputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
    }

    void write(const std::string& primary) {
        doc_["tool_version"] = HOPRISK_VERSION;
        doc_["outputs"] = outputs_;
        std::ofstream out(primary + ".manifest.json", std::ios::binary);
        if (!out) throw ParseError("cannot write manifest for " + primary);
        out << doc_.dump(2) << '\n';
    }

private:
    json doc_ = json::object();
    json outputs_ = json::array();
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t chosen = (std::uint64_t{rd()} << 32) | rd();
    err << "seed: " << chosen << '\n';
    return chosen;
}

std::string pmf_csv(const JointPmf& pmf) {
    std::ostringstream out;
    write_pmf_csv(out, pmf);
    return out.str();
}

JointPmf load_pmf(const std::string& path) {
    std::istringstream in(read_file(path));
    return read_pmf_csv(in);
}

// --- exact -----------------------------------------------------------------

struct ExactArgs {
    std::string network, out;
    int depth = 0;
    std::optional<std::size_t> cap;
};

int cmd_exact(const ExactArgs& a) {
    const NetworkModel net = load_json(a.network);
    ExactOptions options;
    if (a.cap) options.node_cap = *a.cap;
    const JointPmf pmf = joint_pmf(net, a.depth, options);

    Manifest m("exact");
    m.input("network", a.network);
    m.parameters() = {{"depth", a.depth}, {"node_cap", options.node_cap}};
    m.output(a.out, pmf_csv(pmf));
    m.write(a.out);
    return 0;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string network, out;
    int depth = 1;
    std::size_t runs = 1;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& err) {
    const NetworkModel net = load_json(a.network);
    const std::uint64_t seed = resolve_seed(a.seed, err);
    const SampleMatrix samples = simulate_runs(net, a.depth, a.runs, seed, {a.threads});
    std::ostringstream csv;
    write_samples_csv(csv, samples);

    Manifest m("simulate");
    m.input("network", a.network);
    m.parameters() = {{"depth", a.depth}, {"runs", a.runs}, {"seed", seed}, {"type_sizes", net.type_sizes()}};
    m.output(a.out, csv.str());
    m.write(a.out);
    return 0;
}

// --- stats -----------------------------------------------------------------

struct StatsArgs {
    std::string samples, pmf, network, out;
    std::optional<int> depth;
};

std::optional<std::vector<int>> sizes_for_samples(const StatsArgs& a) {
    if (!a.network.empty()) return load_json(a.network).type_sizes();
    const std::string manifest = a.samples + ".manifest.json";
    if (fs::exists(manifest)) {
        const json doc = json::parse(read_file(manifest), nullptr, false);
        if (!doc.is_discarded() && doc.contains("parameters") && doc["parameters"].contains("type_sizes")) {
            return doc["parameters"]["type_sizes"].get<std::vector<int>>();
        }
    }
    return std::nullopt;
}

void append_moments(std::string& csv, const std::string& depth, const MomentSummary& moments) {
    for (std::size_t t = 0; t < moments.types.size(); ++t) {
        csv += depth + ',' + std::to_string(t + 1) + ',' + num(moments.types[t].mean) + ',' +
               num(moments.types[t].sd) + '\n';
    }
}

void append_dependence(std::string& csv, const std::string& depth, const std::vector<PairDependence>& pairs) {
    for (const auto& p : pairs) {
        csv += depth + ',' + std::to_string(p.first + 1) + '-' + std::to_string(p.second + 1) + ',' +
               opt_num(p.measures.pearson) + ',' + opt_num(p.measures.kendall) + ',' +
               opt_num(p.measures.spearman) + '\n';
    }
}

// Proportions of each type on the axes, as used for contour plots.
std::string contour_csv(const JointPmf& pmf) {
    std::string csv = "x1,x2,prob\n";
    const auto& sizes = pmf.type_sizes();
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        const auto c = pmf.counts_of(flat);
        csv += num(static_cast<double>(c[0]) / sizes[0]) + ',' + num(static_cast<double>(c[1]) / sizes[1]) + ',' +
               num(pmf[flat]) + '\n';
    }
    return csv;
}

int cmd_stats(const StatsArgs& a) {
    std::string moments = "depth,type,mean,sd\n";
    std::string dependence = "depth,pair,pearson,kendall,spearman\n";
    Manifest m("stats");
    std::vector<std::pair<std::string, std::string>> contours;

    if (!a.pmf.empty()) {
        const JointPmf pmf = load_pmf(a.pmf);
        m.input("pmf", a.pmf);
        const std::string depth = a.depth ? std::to_string(*a.depth) : "NA";
        append_moments(moments, depth, marginal_moments(pmf));
        if (pmf.type_count() >= 2) append_dependence(dependence, depth, correlations(pmf));
        if (pmf.type_count() == 2) contours.emplace_back(a.out + ".contour.csv", contour_csv(pmf));
    } else {
        std::istringstream in(read_file(a.samples));
        const SampleMatrix samples = read_samples_csv(in, sizes_for_samples(a));
        m.input("samples", a.samples);
        if (!a.network.empty()) m.input("network", a.network);
        for (int l = 1; l <= samples.depth(); ++l) {
            const std::string depth = std::to_string(l);
            append_moments(moments, depth, marginal_moments(samples, l));
            if (samples.type_count() >= 2) {
                if (samples.runs() >= 2) {
                    append_dependence(dependence, depth, correlations(samples, l));
                } else {
                    for (std::size_t i = 0; i < samples.type_count(); ++i)
                        for (std::size_t j = i + 1; j < samples.type_count(); ++j)
                            append_dependence(dependence, depth, {{i, j, {}}});
                }
            }
            if (samples.type_count() == 2) {
                contours.emplace_back(a.out + ".contour_L" + depth + ".csv", contour_csv(empirical_pmf(samples, l)));
            }
        }
    }

    if (a.depth) m.parameters()["depth"] = *a.depth;
    m.output(a.out + ".moments.csv", moments);
    m.output(a.out + ".dependence.csv", dependence);
    for (const auto& [path, content] : contours) m.output(path, content);
    m.write(a.out);
    return 0;
}

// --- score -----------------------------------------------------------------

struct ScoreArgs {
    std::string pmf, rules, out;
};

int cmd_score(const ScoreArgs& a) {
    const JointPmf pmf = load_pmf(a.pmf);
    const ScoreRuleSet rules = parse_rules(read_file(a.rules), pmf.type_sizes());
    std::string csv = "score,prob\n";
    for (const auto& [score, prob] : score_distribution(rules, pmf)) csv += std::to_string(score) + ',' + num(prob) + '\n';

    Manifest m("score");
    m.input("pmf", a.pmf);
    m.input("rules", a.rules);
    m.output(a.out, csv);
    m.write(a.out);
    return 0;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
    std::string out;
    // ba
    BaParams ba;
    std::string seed_graph = "complete";
    std::size_t top_k = 0;
    std::vector<double> p_types, q_types;
    std::optional<std::uint64_t> seed;
    // complete
    std::vector<int> sizes;
    double p = 0.0, q = 0.0;
    // star / bipartite
    std::size_t star_nodes = 2;
    TwoClassParams two;
};

void finish_generate(const std::string& kind, const NetworkModel& net, const std::string& out, Manifest& m) {
    m.parameters()["topology"] = kind;
    m.parameters()["type_sizes"] = net.type_sizes();
    m.output(out, network_to_json(net));
    m.write(out);
}

int cmd_generate_ba(const GenerateArgs& a, std::ostream& err) {
    BaParams params = a.ba;
    params.seed_graph = a.seed_graph == "ring" ? SeedGraph::ring : SeedGraph::complete;
    const std::uint64_t seed = resolve_seed(a.seed, err);
    NetworkModel net = generate_ba(params, seed);
    if (a.top_k > 0) net = assign_types_by_degree(net, a.top_k);
    const std::size_t m = net.type_count();
    std::vector<double> p = a.p_types.empty() ? std::vector<double>(m, 0.0) : a.p_types;
    std::vector<double> q = a.q_types.empty() ? std::vector<double>(m, 0.0) : a.q_types;
    net = assign_type_parameters(net, p, q);

    Manifest man("generate");
    man.parameters() = {{"nodes", params.nodes}, {"attach", params.attach}, {"initial", params.initial},
                        {"seed_graph", a.seed_graph}, {"top_k", a.top_k}, {"seed", seed},
                        {"p_by_type", p}, {"q_by_target_type", q}};
    finish_generate("ba", net, a.out, man);
    return 0;
}

// --- order-check -----------------------------------------------------------

struct OrderArgs {
    std::string network, out;
    std::vector<int> depths;
    int depth = 1;
    std::optional<double> p_scale, q_scale;
    bool reverse = false;
    double tol = 1e-12;
    std::optional<std::size_t> cap;
};

NetworkModel scaled(const NetworkModel& net, double p_factor, double q_factor) {
    auto nodes = net.node_specs();
    for (auto& s : nodes) s.p = std::min(1.0, s.p * p_factor);
    auto edges = net.edge_specs();
    for (auto& e : edges) {
        e.q_uv = std::min(1.0, e.q_uv * q_factor);
        e.q_vu = std::min(1.0, e.q_vu * q_factor);
    }
    return build_network(nodes, edges);
}

int cmd_order_check(const OrderArgs& a, std::ostream& out) {
    const NetworkModel net = load_json(a.network);
    ExactOptions options;
    if (a.cap) options.node_cap = *a.cap;

    std::string text;
    bool all_passed = true;
    auto compare = [&](const std::string& label, JointPmf lo, JointPmf hi) {
        if (a.reverse) std::swap(lo, hi);
        OrderReport r = check_orthant_monotone(lo, hi, a.tol);
        r.claim = label + (a.reverse ? " (reversed)" : "");
        all_passed = all_passed && r.passed;
        text += format_report(r) + '\n';
    };

    Manifest m("order-check");
    m.input("network", a.network);
    m.parameters()["tolerance"] = a.tol;
    m.parameters()["reverse"] = a.reverse;

    if (a.p_scale || a.q_scale) {
        const double ps = a.p_scale.value_or(1.0), qs = a.q_scale.value_or(1.0);
        const JointPmf base = joint_pmf(net, a.depth, options);
        const JointPmf bumped = joint_pmf(scaled(net, ps, qs), a.depth, options);
        std::ostringstream label;
        label << "X(p, Q) <=_st X(" << ps << "p, " << qs << "Q) at L=" << a.depth;
        compare(label.str(), base, bumped);
        m.parameters()["depth"] = a.depth;
        m.parameters()["p_scale"] = ps;
        m.parameters()["q_scale"] = qs;
    } else {
        if (a.depths.size() < 2) throw ModelError("order-check needs at least two --depths or a scaling flag");
        std::vector<JointPmf> pmfs;
        for (int d : a.depths) pmfs.push_back(joint_pmf(net, d, options));
        for (std::size_t k = 0; k + 1 < a.depths.size(); ++k) {
            compare("X(L=" + std::to_string(a.depths[k]) + ") <=_st X(L=" + std::to_string(a.depths[k + 1]) + ")",
                    pmfs[k], pmfs[k + 1]);
        }
        m.parameters()["depths"] = a.depths;
    }
    text += std::string("overall: ") + (all_passed ? "PASS" : "FAIL") + '\n';

    if (a.out.empty()) {
        out << text;
    } else {
        m.output(a.out, text);
        m.write(a.out);
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Joint compromise risk of heterogeneous networks under L-hop propagation", "hoprisk"};
    app.set_version_flag("--version", HOPRISK_VERSION);
    app.require_subcommand(1);

    ExactArgs ex;
    auto* exact = app.add_subcommand("exact", "Exact joint PMF of compromised counts per type");
    exact->add_option("--network", ex.network, "Network JSON")->required()->check(CLI::ExistingFile);
    exact->add_option("-L,--depth", ex.depth, "Propagation depth (0 = direct only)")->required()->check(CLI::NonNegativeNumber);
    exact->add_option("--out", ex.out, "PMF CSV output")->required();
    exact->add_option("--cap-override", ex.cap, "Raise the node cap of the exact engine (max 64)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo samples of per-depth compromised counts");
    simulate->add_option("--network", sim.network, "Network JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("-L,--depth", sim.depth, "Propagation depth")->required()->check(CLI::PositiveNumber);
    simulate->add_option("-K,--runs", sim.runs, "Number of runs")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Master seed (random and echoed when omitted)");
    simulate->add_option("--threads", sim.threads, "Worker threads; output does not depend on it")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "Sample CSV output")->required();

    StatsArgs st;
    auto* stats = app.add_subcommand("stats", "Moments and dependence measures of samples or a PMF");
    auto* st_samples = stats->add_option("--samples", st.samples, "Sample CSV from simulate")->check(CLI::ExistingFile);
    auto* st_pmf = stats->add_option("--pmf", st.pmf, "PMF CSV from exact")->check(CLI::ExistingFile);
    st_samples->excludes(st_pmf);
    stats->add_option("--network", st.network, "Network JSON giving type sizes for samples")->check(CLI::ExistingFile);
    stats->add_option("-L,--depth", st.depth, "Depth label for a PMF input");
    stats->add_option("--out", st.out, "Output path prefix")->required();

    ScoreArgs sc;
    auto* score = app.add_subcommand("score", "Risk-score distribution of a PMF under ordered pattern rules");
    score->add_option("--pmf", sc.pmf, "PMF CSV")->required()->check(CLI::ExistingFile);
    score->add_option("--rules", sc.rules, "Rule JSON")->required()->check(CLI::ExistingFile);
    score->add_option("--out", sc.out, "Score distribution CSV")->required();

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a network JSON");
    generate->require_subcommand(1);

    auto* ba = generate->add_subcommand("ba", "Barabasi-Albert graph, optionally typed by degree");
    ba->add_option("--nodes", gen.ba.nodes, "Node count")->required();
    ba->add_option("--attach", gen.ba.attach, "Edges per new node")->default_val(2);
    ba->add_option("--init", gen.ba.initial, "Seed graph size")->default_val(5);
    ba->add_option("--seed-graph", gen.seed_graph, "Seed graph topology")
        ->check(CLI::IsMember({"complete", "ring"}))->default_val("complete");
    ba->add_option("--top-k", gen.top_k, "Top-degree nodes made type 1 (0 = single type)");
    ba->add_option("--p", gen.p_types, "Direct probability per type")->delimiter(',');
    ba->add_option("--q", gen.q_types, "Indirect probability per target type")->delimiter(',');
    ba->add_option("--seed", gen.seed, "Generator seed (random and echoed when omitted)");
    ba->add_option("--out", gen.out, "Network JSON output")->required();

    auto* complete = generate->add_subcommand("complete", "Complete graph with homogeneous p and q");
    complete->add_option("--sizes", gen.sizes, "Nodes per type")->required()->delimiter(',');
    complete->add_option("--p", gen.p, "Direct probability")->required();
    complete->add_option("--q", gen.q, "Indirect probability")->required();
    complete->add_option("--out", gen.out, "Network JSON output")->required();

    auto* star = generate->add_subcommand("star", "Star with hub type 1 and leaves type 2");
    star->add_option("--nodes", gen.star_nodes, "Total nodes including the hub")->required();
    star->add_option("--p-hub", gen.two.p_one)->required();
    star->add_option("--p-leaf", gen.two.p_two)->required();
    star->add_option("--q-hub-leaf", gen.two.q_one_two)->required();
    star->add_option("--q-leaf-hub", gen.two.q_two_one)->required();
    star->add_option("--out", gen.out, "Network JSON output")->required();

    auto* bip = generate->add_subcommand("bipartite", "Complete bipartite graph");
    bip->add_option("--sizes", gen.sizes, "n1,n2")->required()->delimiter(',')->expected(2);
    bip->add_option("--p-one", gen.two.p_one)->required();
    bip->add_option("--p-two", gen.two.p_two)->required();
    bip->add_option("--q-one-two", gen.two.q_one_two)->required();
    bip->add_option("--q-two-one", gen.two.q_two_one)->required();
    bip->add_option("--out", gen.out, "Network JSON output")->required();

    OrderArgs oc;
    auto* order = app.add_subcommand("order-check", "Orthant stochastic-order checks between exact PMFs");
    order->add_option("--network", oc.network, "Network JSON")->required()->check(CLI::ExistingFile);
    order->add_option("--depths", oc.depths, "Depths compared pairwise in the given order")->delimiter(',');
    order->add_option("-L,--depth", oc.depth, "Depth for the p/Q scaling comparison")->check(CLI::NonNegativeNumber);
    order->add_option("--p-scale", oc.p_scale, "Compare against p scaled by this factor (capped at 1)");
    order->add_option("--q-scale", oc.q_scale, "Compare against Q scaled by this factor (capped at 1)");
    order->add_flag("--reverse", oc.reverse, "Swap the lower and upper PMF");
    order->add_option("--tol", oc.tol, "Tolerance")->default_val(1e-12);
    order->add_option("--cap-override", oc.cap, "Raise the node cap of the exact engine");
    order->add_option("--out", oc.out, "Report file (stdout when omitted)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*exact) return cmd_exact(ex);
        if (*simulate) return cmd_simulate(sim, err);
        if (*stats) {
            if (st.samples.empty() && st.pmf.empty()) throw ModelError("stats needs --samples or --pmf");
            return cmd_stats(st);
        }
        if (*score) return cmd_score(sc);
        if (*ba) return cmd_generate_ba(gen, err);
        if (*complete) {
            Manifest m("generate");
            m.parameters() = {{"p", gen.p}, {"q", gen.q}};
            finish_generate("complete", make_complete(gen.sizes, gen.p, gen.q), gen.out, m);
            return 0;
        }
        if (*star) {
            Manifest m("generate");
            m.parameters() = {{"nodes", gen.star_nodes}};
            finish_generate("star", make_star(gen.star_nodes, gen.two), gen.out, m);
            return 0;
        }
        if (*bip) {
            Manifest m("generate");
            finish_generate("bipartite",
                            make_complete_bipartite(static_cast<std::size_t>(gen.sizes.at(0)),
                                                    static_cast<std::size_t>(gen.sizes.at(1)), gen.two),
                            gen.out, m);
            return 0;
        }
        if (*order) return cmd_order_check(oc, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace hoprisk::cli
