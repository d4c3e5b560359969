#include "hoprisk/exact.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "hoprisk/errors.hpp"

namespace hoprisk {

std::size_t ExactEngine::MemoHash::operator()(const MemoKey& k) const noexcept {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    std::uint64_t h = mix(k.active, k.target);
    h = mix(h, k.seeds);
    h = mix(h, static_cast<std::uint64_t>(k.depth));
    return static_cast<std::size_t>(h);
}

ExactEngine::ExactEngine(const NetworkModel& net) : n_(net.node_count()), type_sizes_(net.type_sizes()) {
    if (n_ > NodeSet::capacity) {
        throw CapExceeded("exact engine supports at most 64 nodes, network has " + std::to_string(n_), n_,
                          NodeSet::capacity);
    }
    types_.resize(n_);
    p_.resize(n_);
    neighbors_.resize(n_);
    q_fail_.assign(n_ * n_, 1.0);
    for (NodeId i = 0; i < n_; ++i) {
        types_[i] = net.type_of(i);
        p_[i] = net.p(i);
        for (const Arc& a : net.arcs(i)) {
            neighbors_[i] |= NodeSet::single(a.neighbor);
            q_fail_[i * n_ + a.neighbor] = 1.0 - a.q_out;
        }
    }
}

NodeSet ExactEngine::neighbors_of(NodeSet set) const {
    NodeSet out;
    set.for_each([&](NodeId i) { out |= neighbors_[i]; });
    return out;
}

double ExactEngine::one_hop_unchecked(NodeSet active, NodeSet target, NodeSet seeds) const {
    double prob = 1.0;
    (target - seeds).for_each([&](NodeId i) {
        double escape = 1.0;
        (seeds & neighbors_[i]).for_each([&](NodeId j) { escape *= q_fail_[j * n_ + i]; });
        prob *= 1.0 - escape;
    });
    if (prob == 0.0) return 0.0;
    const NodeSet untouched = active - target;
    seeds.for_each([&](NodeId v) {
        (untouched & neighbors_[v]).for_each([&](NodeId l) { prob *= q_fail_[v * n_ + l]; });
    });
    return prob;
}

double ExactEngine::one_hop_prob(NodeSet active, NodeSet target, NodeSet seeds) const {
    if (!active.subset_of(all_nodes()) || !target.subset_of(active) || !seeds.subset_of(target)) {
        throw ModelError("one_hop_prob requires seeds <= target <= active <= V");
    }
    return one_hop_unchecked(active, target, seeds);
}

double ExactEngine::recurse(NodeSet active, NodeSet target, NodeSet seeds, int depth) {
    // an empty front propagates nothing
    if (seeds.empty()) return target.empty() ? 1.0 : 0.0;
    if (depth == 1) return one_hop_unchecked(active, target, seeds);

    const MemoKey key{active.bits(), target.bits(), seeds.bits(), depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const NodeSet rest = target - seeds;
    const NodeSet remaining = active - seeds;
    // nodes of rest outside N(seeds) cannot be hit this round: their factor is 0
    const NodeSet reachable = rest & neighbors_of(seeds);
    double sum = 0.0;
    reachable.for_each_subset([&](NodeSet next_front) {
        const double first = one_hop_unchecked(active, seeds | next_front, seeds);
        if (first == 0.0) return;
        sum += first * recurse(remaining, rest, next_front, depth - 1);
    });
    memo_.emplace(key, sum);
    return sum;
}

double ExactEngine::r_prob(NodeSet active, NodeSet target, NodeSet seeds, int depth) {
    if (depth < 1) throw ModelError("r_prob requires depth >= 1");
    if (!active.subset_of(all_nodes()) || !target.subset_of(active) || !seeds.subset_of(target)) {
        throw ModelError("r_prob requires seeds <= target <= active <= V");
    }
    return recurse(active, target, seeds, depth);
}

double ExactEngine::direct_prob(NodeSet seeds) const {
    double prob = 1.0;
    for (NodeId i = 0; i < n_; ++i) prob *= seeds.contains(i) ? p_[i] : 1.0 - p_[i];
    return prob;
}

double ExactEngine::event_prob(NodeSet target, int depth) {
    if (depth < 0) throw ModelError("depth must be non-negative");
    if (!target.subset_of(all_nodes())) throw ModelError("event_prob: target contains unknown nodes");
    if (depth == 0) return direct_prob(target);

    const NodeSet everything = all_nodes();
    double sum = 0.0;
    target.for_each_subset([&](NodeSet seeds) {
        const double weight = direct_prob(seeds);
        if (weight == 0.0) return;
        sum += weight * recurse(everything, target, seeds, depth);
    });
    return sum;
}

JointPmf ExactEngine::joint_pmf(int depth) {
    if (depth < 0) throw ModelError("depth must be non-negative");
    JointPmf pmf(type_sizes_);
    std::vector<int> counts(type_sizes_.size());
    all_nodes().for_each_subset([&](NodeSet target) {
        std::fill(counts.begin(), counts.end(), 0);
        target.for_each([&](NodeId i) { ++counts[types_[i]]; });
        pmf.at(counts) += event_prob(target, depth);
    });
    return pmf;
}

double estimated_exact_cost(std::size_t nodes) { return std::pow(3.0, static_cast<double>(nodes)); }

JointPmf joint_pmf(const NetworkModel& net, int depth, const ExactOptions& options) {
    const std::size_t n = net.node_count();
    if (n > options.node_cap) {
        char cost[32];
        std::snprintf(cost, sizeof cost, "%.1e", estimated_exact_cost(n));
        throw CapExceeded("exact engine: network has " + std::to_string(n) + " nodes, above the cap of " +
                              std::to_string(options.node_cap) + " (estimated cost ~" + cost +
                              " subset pairs); use `simulate` for a Monte Carlo estimate, or raise the cap"
                              " with --cap-override",
                          n, options.node_cap);
    }
    ExactEngine engine(net);
    return engine.joint_pmf(depth);
}

}  // namespace hoprisk
