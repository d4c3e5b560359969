#include "hoprisk/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "hoprisk/errors.hpp"

namespace hoprisk {

namespace {

std::vector<NodeSpec> uniform_nodes(std::size_t n) {
    std::vector<NodeSpec> nodes(n);
    for (NodeId i = 0; i < n; ++i) nodes[i] = {i, 0, 0.0};
    return nodes;
}

}  // namespace

NetworkModel generate_ba(const BaParams& params, std::uint64_t seed) {
    const auto [n, m, n0, seed_graph] = params;
    if (m < 1) throw ModelError("attach must be at least 1");
    if (n0 < m) throw ModelError("initial node count must be at least attach");
    if (n < n0) throw ModelError("node count must be at least the initial node count");

    std::vector<EdgeSpec> edges;
    std::vector<std::uint64_t> degree(n, 0);
    auto link = [&](NodeId u, NodeId v) {
        edges.push_back({u, v, 0.0, 0.0});
        ++degree[u];
        ++degree[v];
    };

    if (seed_graph == SeedGraph::complete) {
        for (NodeId u = 0; u < n0; ++u)
            for (NodeId v = u + 1; v < n0; ++v) link(u, v);
    } else {
        for (NodeId u = 0; u + 1 < n0; ++u) link(u, u + 1);
        if (n0 > 2) link(0, static_cast<NodeId>(n0 - 1));
    }

    std::mt19937_64 engine(seed);
    std::vector<bool> chosen(n, false);
    std::vector<NodeId> targets;
    for (NodeId fresh = static_cast<NodeId>(n0); fresh < n; ++fresh) {
        targets.clear();
        for (std::size_t pick = 0; pick < m; ++pick) {
            std::uint64_t total = 0;
            for (NodeId v = 0; v < fresh; ++v)
                if (!chosen[v]) total += degree[v];

            NodeId hit = 0;
            if (total == 0) {
                std::uint64_t r = engine() % (fresh - targets.size());
                for (NodeId v = 0; v < fresh; ++v) {
                    if (chosen[v]) continue;
                    if (r-- == 0) { hit = v; break; }
                }
            } else {
                std::uint64_t r = engine() % total;
                for (NodeId v = 0; v < fresh; ++v) {
                    if (chosen[v]) continue;
                    if (r < degree[v]) { hit = v; break; }
                    r -= degree[v];
                }
            }
            chosen[hit] = true;
            targets.push_back(hit);
        }
        for (NodeId t : targets) {
            chosen[t] = false;
            link(t, fresh);
        }
    }

    auto nodes = uniform_nodes(n);
    return build_network(nodes, edges);
}

NetworkModel assign_types_by_degree(const NetworkModel& net, std::size_t top_k) {
    const std::size_t n = net.node_count();
    if (top_k == 0 || top_k >= n) {
        throw ModelError("top_k must be in 1.." + std::to_string(n - 1));
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return net.degree(a) > net.degree(b); });

    auto nodes = net.node_specs();
    for (auto& s : nodes) s.type = 1;
    for (std::size_t k = 0; k < top_k; ++k) nodes[order[k]].type = 0;
    auto edges = net.edge_specs();
    return build_network(nodes, edges);
}

NetworkModel assign_type_parameters(const NetworkModel& net, std::span<const double> p_by_type,
                                    std::span<const double> q_by_target_type) {
    const std::size_t m = net.type_count();
    if (p_by_type.size() != m || q_by_target_type.size() != m) {
        throw ModelError("expected " + std::to_string(m) + " per-type probabilities");
    }
    auto nodes = net.node_specs();
    for (auto& s : nodes) s.p = p_by_type[s.type];
    auto edges = net.edge_specs();
    for (auto& e : edges) {
        e.q_uv = q_by_target_type[net.type_of(e.v)];
        e.q_vu = q_by_target_type[net.type_of(e.u)];
    }
    return build_network(nodes, edges);
}

NetworkModel make_complete(std::span<const int> type_sizes, double p, double q) {
    std::vector<NodeSpec> nodes;
    for (TypeId t = 0; t < type_sizes.size(); ++t) {
        if (type_sizes[t] <= 0) throw ModelError("type sizes must be positive");
        for (int k = 0; k < type_sizes[t]; ++k)
            nodes.push_back({static_cast<NodeId>(nodes.size()), t, p});
    }
    std::vector<EdgeSpec> edges;
    for (NodeId u = 0; u < nodes.size(); ++u)
        for (NodeId v = u + 1; v < nodes.size(); ++v) edges.push_back({u, v, q, q});
    return build_network(nodes, edges);
}

NetworkModel make_star(std::size_t nodes, const TwoClassParams& params) {
    if (nodes < 2) throw ModelError("a star needs at least 2 nodes");
    std::vector<NodeSpec> specs{{0, 0, params.p_one}};
    std::vector<EdgeSpec> edges;
    for (NodeId leaf = 1; leaf < nodes; ++leaf) {
        specs.push_back({leaf, 1, params.p_two});
        edges.push_back({0, leaf, params.q_one_two, params.q_two_one});
    }
    return build_network(specs, edges);
}

NetworkModel make_complete_bipartite(std::size_t n1, std::size_t n2, const TwoClassParams& params) {
    if (n1 == 0 || n2 == 0) throw ModelError("both parts must be nonempty");
    std::vector<NodeSpec> specs;
    for (NodeId i = 0; i < n1; ++i) specs.push_back({i, 0, params.p_one});
    for (NodeId j = 0; j < n2; ++j) specs.push_back({static_cast<NodeId>(n1 + j), 1, params.p_two});
    std::vector<EdgeSpec> edges;
    for (NodeId i = 0; i < n1; ++i)
        for (NodeId j = 0; j < n2; ++j)
            edges.push_back({i, static_cast<NodeId>(n1 + j), params.q_one_two, params.q_two_one});
    return build_network(specs, edges);
}

}  // namespace hoprisk
