#include "hoprisk/simulation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "csv_util.hpp"
#include "hoprisk/errors.hpp"

namespace hoprisk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RunStream::RunStream(std::uint64_t master_seed, std::uint64_t run_index)
    : state_(splitmix64(splitmix64(master_seed) + run_index)) {}

CompromiseTrace propagate(const NetworkModel& net, int depth, std::span<const NodeId> direct, RunStream& rng) {
    if (depth < 0) throw ModelError("depth must be non-negative");
    const std::size_t n = net.node_count();
    const std::size_t m = net.type_count();

    enum : std::uint8_t { intact = 0, in_front = 1, retired = 2 };
    std::vector<std::uint8_t> state(n, intact);

    CompromiseTrace trace;
    trace.fronts.reserve(static_cast<std::size_t>(depth) + 1);
    trace.cumulative.reserve(static_cast<std::size_t>(depth) + 1);

    std::vector<NodeId> front(direct.begin(), direct.end());
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());
    std::vector<int> counts(m, 0);
    for (NodeId i : front) {
        if (i >= n) throw ModelError("direct set references an unknown node");
        state[i] = in_front;
        ++counts[net.type_of(i)];
    }
    trace.fronts.push_back(front);
    trace.cumulative.push_back(counts);

    std::vector<NodeId> targets;
    std::vector<NodeId> next;
    for (int h = 1; h <= depth; ++h) {
        targets.clear();
        for (NodeId l : front) {
            for (const Arc& a : net.arcs(l)) {
                if (state[a.neighbor] == intact) targets.push_back(a.neighbor);
            }
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        next.clear();
        for (NodeId j : targets) {
            bool hit = false;
            for (const Arc& a : net.arcs(j)) {
                if (state[a.neighbor] != in_front) continue;
                // draw every attempt so the stream position does not depend on outcomes
                hit = rng.bernoulli(a.q_in) || hit;
            }
            if (hit) next.push_back(j);
        }

        for (NodeId l : front) state[l] = retired;
        for (NodeId j : next) {
            state[j] = in_front;
            ++counts[net.type_of(j)];
        }
        front.swap(next);
        trace.fronts.push_back(front);
        trace.cumulative.push_back(counts);
    }
    return trace;
}

CompromiseTrace single_run(const NetworkModel& net, int depth, RunStream& rng) {
    std::vector<NodeId> direct;
    for (NodeId i = 0; i < net.node_count(); ++i) {
        if (rng.bernoulli(net.p(i))) direct.push_back(i);
    }
    return propagate(net, depth, direct, rng);
}

SampleMatrix::SampleMatrix(std::size_t runs, int depth, std::vector<int> type_sizes, std::uint64_t master_seed)
    : runs_(runs), depth_(depth), sizes_(std::move(type_sizes)), seed_(master_seed) {
    if (depth < 1) throw ModelError("sample matrices need depth >= 1");
    counts_.assign(runs_ * static_cast<std::size_t>(depth_) * sizes_.size(), 0);
}

std::size_t SampleMatrix::offset(std::size_t run, int depth) const {
    if (run >= runs_ || depth < 1 || depth > depth_) throw ModelError("sample index out of range");
    return (run * static_cast<std::size_t>(depth_) + static_cast<std::size_t>(depth - 1)) * sizes_.size();
}

std::span<const int> SampleMatrix::row(std::size_t run, int depth) const {
    return std::span<const int>(counts_).subspan(offset(run, depth), sizes_.size());
}

std::span<int> SampleMatrix::row(std::size_t run, int depth) {
    return std::span<int>(counts_).subspan(offset(run, depth), sizes_.size());
}

std::vector<int> SampleMatrix::column(int depth, std::size_t type) const {
    std::vector<int> out(runs_);
    for (std::size_t k = 0; k < runs_; ++k) out[k] = at(k, depth, type);
    return out;
}

SampleMatrix simulate_runs(const NetworkModel& net, int depth, std::size_t runs, std::uint64_t master_seed,
                           const SimulationOptions& options) {
    if (depth < 1) throw ModelError("simulation needs depth >= 1");
    if (runs < 1) throw ModelError("simulation needs at least one run");
    SampleMatrix samples(runs, depth, net.type_sizes(), master_seed);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            RunStream rng(master_seed, k);
            const CompromiseTrace trace = single_run(net, depth, rng);
            for (int l = 1; l <= depth; ++l) {
                std::ranges::copy(trace.cumulative[static_cast<std::size_t>(l)], samples.row(k, l).begin());
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, runs);
    if (threads == 1) {
        work(0, runs);
        return samples;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (runs + threads - 1) / threads;
    for (std::size_t begin = 0; begin < runs; begin += chunk) {
        pool.emplace_back(work, begin, std::min(runs, begin + chunk));
    }
    pool.clear();
    return samples;
}

JointPmf empirical_pmf(const SampleMatrix& samples, int depth) {
    if (samples.runs() == 0) throw ModelError("empirical_pmf needs at least one sample");
    if (depth < 1 || depth > samples.depth()) throw ModelError("depth outside the simulated range");
    JointPmf pmf(samples.type_sizes());
    std::vector<std::size_t> hits(pmf.cell_count(), 0);
    for (std::size_t k = 0; k < samples.runs(); ++k) ++hits[pmf.flat_index(samples.row(k, depth))];
    const double total = static_cast<double>(samples.runs());
    for (std::size_t c = 0; c < hits.size(); ++c) pmf[c] = static_cast<double>(hits[c]) / total;
    return pmf;
}

void write_samples_csv(std::ostream& out, const SampleMatrix& samples) {
    out << "run,depth";
    for (std::size_t t = 0; t < samples.type_count(); ++t) out << ",x_" << t + 1;
    out << '\n';
    std::string line;
    for (std::size_t k = 0; k < samples.runs(); ++k) {
        for (int l = 1; l <= samples.depth(); ++l) {
            line = std::to_string(k) + ',' + std::to_string(l);
            for (int c : samples.row(k, l)) line += ',' + std::to_string(c);
            line += '\n';
            out << line;
        }
    }
}

SampleMatrix read_samples_csv(std::istream& in, std::optional<std::vector<int>> type_sizes) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty samples file");
    auto header = detail::split_csv(line);
    if (header.size() < 3 || header[0] != "run" || header[1] != "depth") {
        throw ParseError("samples header must be run,depth,x_1,...,x_M");
    }
    const std::size_t m = header.size() - 2;

    struct Row {
        std::size_t run;
        int depth;
        std::vector<int> counts;
    };
    std::vector<Row> rows;
    std::size_t runs = 0;
    int depth = 0;
    std::vector<int> observed(m, 0);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = detail::split_csv(line);
        if (f.size() != m + 2) throw ParseError("line " + std::to_string(line_no) + ": wrong field count");
        Row r{static_cast<std::size_t>(detail::parse_int(f[0], line_no)),
              static_cast<int>(detail::parse_int(f[1], line_no)), std::vector<int>(m)};
        if (r.depth < 1) throw ParseError("line " + std::to_string(line_no) + ": depth must be >= 1");
        for (std::size_t t = 0; t < m; ++t) {
            r.counts[t] = static_cast<int>(detail::parse_int(f[t + 2], line_no));
            if (r.counts[t] < 0) throw ParseError("line " + std::to_string(line_no) + ": negative count");
            observed[t] = std::max(observed[t], r.counts[t]);
        }
        runs = std::max(runs, r.run + 1);
        depth = std::max(depth, r.depth);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParseError("samples file has no rows");
    if (rows.size() != runs * static_cast<std::size_t>(depth)) {
        throw ParseError("samples file must hold every (run, depth) pair exactly once");
    }

    std::vector<int> sizes = type_sizes.value_or(observed);
    if (sizes.size() != m) throw ParseError("type sizes do not match the samples header");
    for (std::size_t t = 0; t < m; ++t) {
        if (observed[t] > sizes[t]) throw ParseError("sample count exceeds its type size");
    }

    SampleMatrix samples(runs, depth, sizes, 0);
    std::vector<bool> filled(runs * static_cast<std::size_t>(depth), false);
    for (const Row& r : rows) {
        const std::size_t slot = r.run * static_cast<std::size_t>(depth) + static_cast<std::size_t>(r.depth - 1);
        if (filled[slot]) throw ParseError("duplicate (run, depth) row");
        filled[slot] = true;
        std::ranges::copy(r.counts, samples.row(r.run, r.depth).begin());
    }
    return samples;
}

}  // namespace hoprisk
