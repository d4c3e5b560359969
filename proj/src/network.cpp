#include "hoprisk/network.hpp"

#include <algorithm>
#include <string>

#include "hoprisk/errors.hpp"

namespace hoprisk {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

const Arc* find_arc(const std::vector<Arc>& arcs, NodeId j) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), j,
                               [](const Arc& a, NodeId id) { return a.neighbor < id; });
    if (it == arcs.end() || it->neighbor != j) return nullptr;
    return &*it;
}

}  // namespace

double NetworkModel::q(NodeId i, NodeId j) const {
    const Arc* arc = find_arc(adjacency_.at(i), j);
    return arc ? arc->q_out : 0.0;
}

bool NetworkModel::has_edge(NodeId i, NodeId j) const {
    return find_arc(adjacency_.at(i), j) != nullptr;
}

std::vector<NodeSpec> NetworkModel::node_specs() const {
    std::vector<NodeSpec> out;
    out.reserve(node_count());
    for (NodeId i = 0; i < node_count(); ++i) out.push_back({i, types_[i], p_[i]});
    return out;
}

std::vector<EdgeSpec> NetworkModel::edge_specs() const {
    std::vector<EdgeSpec> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (const Arc& a : adjacency_[u]) {
            if (a.neighbor > u) out.push_back({u, a.neighbor, a.q_out, a.q_in});
        }
    }
    return out;
}

bool operator==(const NetworkModel& a, const NetworkModel& b) {
    if (a.types_ != b.types_ || a.p_ != b.p_ || a.type_sizes_ != b.type_sizes_) return false;
    if (a.edge_count_ != b.edge_count_) return false;
    for (std::size_t i = 0; i < a.adjacency_.size(); ++i) {
        const auto& x = a.adjacency_[i];
        const auto& y = b.adjacency_[i];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k].neighbor != y[k].neighbor || x[k].q_out != y[k].q_out || x[k].q_in != y[k].q_in)
                return false;
        }
    }
    return true;
}

NetworkModel build_network(std::span<const NodeSpec> nodes, std::span<const EdgeSpec> edges) {
    const std::size_t n = nodes.size();
    if (n == 0) throw ModelError("network has no nodes");

    NetworkModel net;
    net.types_.assign(n, 0);
    net.p_.assign(n, 0.0);
    net.adjacency_.assign(n, {});

    std::vector<bool> seen(n, false);
    TypeId max_type = 0;
    for (const NodeSpec& s : nodes) {
        if (s.id >= n) {
            throw ModelError("node id " + std::to_string(s.id) + " outside 0.." + std::to_string(n - 1));
        }
        if (seen[s.id]) throw ModelError("duplicate node id " + std::to_string(s.id));
        if (!is_probability(s.p)) {
            throw ModelError("p of node " + std::to_string(s.id) + " is not in [0,1]");
        }
        seen[s.id] = true;
        net.types_[s.id] = s.type;
        net.p_[s.id] = s.p;
        max_type = std::max(max_type, s.type);
    }

    net.type_sizes_.assign(std::size_t{max_type} + 1, 0);
    for (TypeId t : net.types_) ++net.type_sizes_[t];
    for (std::size_t t = 0; t < net.type_sizes_.size(); ++t) {
        if (net.type_sizes_[t] == 0) throw ModelError("type " + std::to_string(t) + " has no nodes");
    }

    for (const EdgeSpec& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ModelError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} references an unknown node");
        }
        if (e.u == e.v) throw ModelError("self-loop on node " + std::to_string(e.u));
        if (!is_probability(e.q_uv) || !is_probability(e.q_vu)) {
            throw ModelError("q on edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} is not in [0,1]");
        }
        net.adjacency_[e.u].push_back({e.v, e.q_uv, e.q_vu});
        net.adjacency_[e.v].push_back({e.u, e.q_vu, e.q_uv});
    }

    for (NodeId i = 0; i < n; ++i) {
        auto& arcs = net.adjacency_[i];
        std::sort(arcs.begin(), arcs.end(),
                  [](const Arc& a, const Arc& b) { return a.neighbor < b.neighbor; });
        auto dup = std::adjacent_find(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
            return a.neighbor == b.neighbor;
        });
        if (dup != arcs.end()) {
            throw ModelError("edge {" + std::to_string(i) + "," + std::to_string(dup->neighbor) +
                             "} given more than once");
        }
    }
    net.edge_count_ = edges.size();
    return net;
}

NetworkModel induced_subnetwork(const NetworkModel& net, std::span<const NodeId> subset) {
    const std::size_t n = net.node_count();
    std::vector<NodeId> kept(subset.begin(), subset.end());
    std::sort(kept.begin(), kept.end());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        if (kept[k] >= n) throw ModelError("unknown node id " + std::to_string(kept[k]));
        if (k > 0 && kept[k] == kept[k - 1]) {
            throw ModelError("node id " + std::to_string(kept[k]) + " listed twice");
        }
    }

    constexpr NodeId absent = ~NodeId{0};
    std::vector<NodeId> remap(n, absent);
    for (NodeId k = 0; k < kept.size(); ++k) remap[kept[k]] = k;

    NetworkModel sub;
    sub.type_sizes_.assign(net.type_count(), 0);
    sub.types_.reserve(kept.size());
    sub.p_.reserve(kept.size());
    sub.adjacency_.resize(kept.size());
    std::size_t arcs = 0;
    for (NodeId k = 0; k < kept.size(); ++k) {
        const NodeId old = kept[k];
        sub.types_.push_back(net.types_[old]);
        sub.p_.push_back(net.p_[old]);
        ++sub.type_sizes_[net.types_[old]];
        for (const Arc& a : net.adjacency_[old]) {
            if (remap[a.neighbor] != absent) {
                // remap is monotone, so ascending order is preserved
                sub.adjacency_[k].push_back({remap[a.neighbor], a.q_out, a.q_in});
                ++arcs;
            }
        }
    }
    sub.edge_count_ = arcs / 2;
    return sub;
}

}  // namespace hoprisk
