#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoprisk/network.hpp"

namespace hoprisk {

enum class SeedGraph { complete, ring };

struct BaParams {
    std::size_t nodes = 200;
    std::size_t attach = 2;       // edges added per new node
    std::size_t initial = 5;      // size of the seed graph
    SeedGraph seed_graph = SeedGraph::complete;
};

// Barabasi-Albert preferential attachment. Every node gets type 0 and all
// probabilities are 0; use assign_types_by_degree / assign_type_parameters
// afterwards. Each new node links to `attach` distinct existing nodes drawn
// without replacement with weight equal to their degree before the step
// (uniformly when all those degrees are zero). Deterministic in `seed`.
NetworkModel generate_ba(const BaParams& params, std::uint64_t seed);

// The `top_k` highest-degree nodes become type 0, the rest type 1. Degree
// ties go to the smaller id. Requires 0 < top_k < N.
NetworkModel assign_types_by_degree(const NetworkModel& net, std::size_t top_k);

// Sets p_i = p_by_type[type(i)] and q_ij = q_by_target_type[type(j)] on
// every directed edge.
NetworkModel assign_type_parameters(const NetworkModel& net, std::span<const double> p_by_type,
                                    std::span<const double> q_by_target_type);

// Two-class parameterization shared by the star and complete-bipartite
// topologies. Class I is the hub (star) or the first part (bipartite).
struct TwoClassParams {
    double p_one = 0.0;      // direct, class I
    double p_two = 0.0;      // direct, class II
    double q_one_two = 0.0;  // class I node compromises a class II neighbor
    double q_two_one = 0.0;  // class II node compromises a class I neighbor
};

// Complete graph with homogeneous p and q. Types are laid out contiguously:
// nodes 0..N_1-1 are type 0, the next N_2 are type 1, and so on.
NetworkModel make_complete(std::span<const int> type_sizes, double p, double q);

// Star with hub 0 (type 0) and leaves 1..nodes-1 (type 1). nodes >= 2.
NetworkModel make_star(std::size_t nodes, const TwoClassParams& params);

// Complete bipartite K_{n1,n2}: nodes 0..n1-1 are type 0, the rest type 1.
NetworkModel make_complete_bipartite(std::size_t n1, std::size_t n2, const TwoClassParams& params);

}  // namespace hoprisk
