#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hoprisk {

using NodeId = std::uint32_t;
using TypeId = std::uint32_t;

struct NodeSpec {
    NodeId id = 0;
    TypeId type = 0;
    double p = 0.0;  // direct compromise probability
};

// Undirected edge {u, v}; q_uv is the probability that a compromised u
// compromises v in one attempt, q_vu the reverse.
struct EdgeSpec {
    NodeId u = 0;
    NodeId v = 0;
    double q_uv = 0.0;
    double q_vu = 0.0;

    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

// One endpoint's view of an incident edge.
struct Arc {
    NodeId neighbor = 0;
    double q_out = 0.0;  // self -> neighbor
    double q_in = 0.0;   // neighbor -> self
};

// Immutable heterogeneous network: typed nodes with direct-compromise
// probabilities and undirected edges carrying per-direction indirect
// probabilities. Off-edge q is implicitly 0.
class NetworkModel {
public:
    NetworkModel() = default;

    std::size_t node_count() const noexcept { return types_.size(); }
    std::size_t type_count() const noexcept { return type_sizes_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    TypeId type_of(NodeId i) const { return types_.at(i); }
    double p(NodeId i) const { return p_.at(i); }
    // q(i, j): probability that compromised i compromises neighbor j.
    double q(NodeId i, NodeId j) const;
    bool has_edge(NodeId i, NodeId j) const;
    std::size_t degree(NodeId i) const { return adjacency_.at(i).size(); }

    // Incident arcs sorted by ascending neighbor id.
    std::span<const Arc> arcs(NodeId i) const { return adjacency_.at(i); }

    // N_i per type; entries may be zero only for induced subnetworks.
    const std::vector<int>& type_sizes() const noexcept { return type_sizes_; }

    std::vector<NodeSpec> node_specs() const;
    // Edges with u < v, sorted lexicographically.
    std::vector<EdgeSpec> edge_specs() const;

    friend bool operator==(const NetworkModel&, const NetworkModel&);

private:
    friend NetworkModel build_network(std::span<const NodeSpec>, std::span<const EdgeSpec>);
    friend NetworkModel induced_subnetwork(const NetworkModel&, std::span<const NodeId>);

    std::vector<TypeId> types_;
    std::vector<double> p_;
    std::vector<std::vector<Arc>> adjacency_;
    std::vector<int> type_sizes_;
    std::size_t edge_count_ = 0;
};

// Validates and assembles a model. Node ids must be exactly 0..N-1 (any
// order), types 0..M-1 with every type nonempty, probabilities in [0,1],
// no self-loops and no repeated edges. Throws ModelError otherwise.
NetworkModel build_network(std::span<const NodeSpec> nodes, std::span<const EdgeSpec> edges);

// Subnetwork induced by `subset`: nodes are renumbered 0..|U|-1 in ascending
// order of their original ids; types keep the parent's numbering, so a type
// may end up empty. Throws ModelError on unknown or repeated ids.
NetworkModel induced_subnetwork(const NetworkModel& net, std::span<const NodeId> subset);

}  // namespace hoprisk
