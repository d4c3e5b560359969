#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hoprisk/network.hpp"
#include "hoprisk/node_set.hpp"
#include "hoprisk/pmf.hpp"

namespace hoprisk {

struct ExactOptions {
    // Soft limit on N; the bitmask representation imposes a hard limit of 64.
    std::size_t node_cap = 20;
};

// Exact L-hop compromise probabilities by backward elimination.
//
// R(U, C, D; L) is the probability that exactly the nodes of C end up
// compromised on the subnetwork induced by U, given that exactly D was
// compromised directly. One propagation round from front D gives the
// one-hop factor; the front and its edges are then eliminated and the
// remaining (L-1)-hop problem is solved on U \ D with the newly
// compromised set as the next front:
//
//   R(U, C, D; L) = sum_{D1 in C\D} one_hop(U, D u D1, D) * R(U\D, C\D, D1; L-1)
//
// Subproblems are memoized on (U, C, D, L). Not thread-safe; use one engine
// per thread.
class ExactEngine {
public:
    // Throws CapExceeded above NodeSet::capacity nodes.
    explicit ExactEngine(const NetworkModel& net);

    NodeSet all_nodes() const { return NodeSet::first(n_); }
    std::size_t node_count() const { return n_; }

    // Probability that, starting from front `seeds` inside `active`, one
    // round compromises exactly target \ seeds and nothing else in `active`:
    //   prod_{i in C\D} (1 - prod_{j in D} (1-q_ji)) * prod_{v in D, l in U\C} (1-q_vl)
    // Requires seeds <= target <= active.
    double one_hop_prob(NodeSet active, NodeSet target, NodeSet seeds) const;

    // R(active, target, seeds; depth), depth >= 1.
    double r_prob(NodeSet active, NodeSet target, NodeSet seeds, int depth);

    // P(exactly `target` is compromised) under depth-hop propagation. Depth 0
    // means direct compromise only.
    double event_prob(NodeSet target, int depth);

    // Joint PMF of compromised counts per type. Does not apply the soft cap.
    JointPmf joint_pmf(int depth);

    std::size_t memo_size() const { return memo_.size(); }

private:
    struct MemoKey {
        std::uint64_t active, target, seeds;
        int depth;
        bool operator==(const MemoKey&) const = default;
    };
    struct MemoHash {
        std::size_t operator()(const MemoKey& k) const noexcept;
    };

    double recurse(NodeSet active, NodeSet target, NodeSet seeds, int depth);
    double one_hop_unchecked(NodeSet active, NodeSet target, NodeSet seeds) const;
    double direct_prob(NodeSet seeds) const;
    NodeSet neighbors_of(NodeSet set) const;

    std::size_t n_ = 0;
    std::vector<int> type_sizes_;
    std::vector<TypeId> types_;
    std::vector<double> p_;
    std::vector<NodeSet> neighbors_;
    std::vector<double> q_fail_;  // n x n, q_fail_[j*n + i] = 1 - q_ji
    std::unordered_map<MemoKey, double, MemoHash> memo_;
};

// Rough operation count 3^N used in cap diagnostics.
double estimated_exact_cost(std::size_t nodes);

// Checks the soft cap (throwing CapExceeded with guidance towards the
// simulator) and computes the joint PMF.
JointPmf joint_pmf(const NetworkModel& net, int depth, const ExactOptions& options = {});

}  // namespace hoprisk
