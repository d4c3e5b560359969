#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hoprisk/network.hpp"
#include "hoprisk/pmf.hpp"

namespace hoprisk {

// Random stream owned by one simulation run: a SplitMix64 counter whose
// starting point is a pure function of (master seed, run index), so results
// do not depend on scheduling. Seeding is O(1), which matters at 10^6 runs.
class RunStream {
public:
    RunStream(std::uint64_t master_seed, std::uint64_t run_index);
    explicit RunStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

struct CompromiseTrace {
    // fronts[h] = nodes newly compromised at depth h, ascending; fronts[0] is
    // the directly compromised set.
    std::vector<std::vector<NodeId>> fronts;
    // cumulative[l][t] = compromised type-t nodes after l rounds.
    std::vector<std::vector<int>> cumulative;
};

// Runs `depth` propagation rounds from a given directly compromised set.
// In each round every intact node adjacent to the current front receives
// one independent attempt from each front neighbor (ascending id order, all
// attempts drawn); the front is then retired and replaced by the nodes it
// compromised.
CompromiseTrace propagate(const NetworkModel& net, int depth, std::span<const NodeId> direct, RunStream& rng);

// Draws the direct set as independent Bernoulli(p_i), then propagates.
CompromiseTrace single_run(const NetworkModel& net, int depth, RunStream& rng);

// Cumulative per-type counts for depths 1..depth of each run.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t runs, int depth, std::vector<int> type_sizes, std::uint64_t master_seed);

    std::size_t runs() const noexcept { return runs_; }
    int depth() const noexcept { return depth_; }
    std::size_t type_count() const noexcept { return sizes_.size(); }
    const std::vector<int>& type_sizes() const noexcept { return sizes_; }
    std::uint64_t master_seed() const noexcept { return seed_; }

    // depth in 1..depth()
    std::span<const int> row(std::size_t run, int depth) const;
    std::span<int> row(std::size_t run, int depth);
    int at(std::size_t run, int depth, std::size_t type) const { return row(run, depth)[type]; }
    std::vector<int> column(int depth, std::size_t type) const;

    friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

private:
    std::size_t offset(std::size_t run, int depth) const;

    std::size_t runs_ = 0;
    int depth_ = 0;
    std::vector<int> sizes_;
    std::uint64_t seed_ = 0;
    std::vector<int> counts_;
};

struct SimulationOptions {
    unsigned threads = 1;
};

// K independent runs; run k uses RunStream(master_seed, k).
SampleMatrix simulate_runs(const NetworkModel& net, int depth, std::size_t runs, std::uint64_t master_seed,
                           const SimulationOptions& options = {});

// Normalized histogram of the count vectors at `depth`.
JointPmf empirical_pmf(const SampleMatrix& samples, int depth);

// run,depth,x_1,...,x_M with one row per (run, depth >= 1); runs are 0-based.
void write_samples_csv(std::ostream& out, const SampleMatrix& samples);
// Type sizes default to the largest observed count per column.
SampleMatrix read_samples_csv(std::istream& in, std::optional<std::vector<int>> type_sizes = std::nullopt);

}  // namespace hoprisk
