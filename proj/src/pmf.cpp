#include "hoprisk/pmf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "csv_util.hpp"
#include "hoprisk/errors.hpp"

namespace hoprisk {

JointPmf::JointPmf(std::vector<int> type_sizes) : sizes_(std::move(type_sizes)) {
    strides_.assign(sizes_.size(), 1);
    std::size_t cells = 1;
    for (std::size_t t = sizes_.size(); t-- > 0;) {
        if (sizes_[t] < 0) throw ModelError("type sizes must be non-negative");
        strides_[t] = cells;
        cells *= static_cast<std::size_t>(sizes_[t]) + 1;
    }
    probs_.assign(cells, 0.0);
}

std::size_t JointPmf::flat_index(std::span<const int> counts) const {
    if (counts.size() != sizes_.size()) throw ModelError("count vector has wrong dimension");
    std::size_t flat = 0;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] < 0 || counts[t] > sizes_[t]) throw ModelError("count outside PMF support");
        flat += strides_[t] * static_cast<std::size_t>(counts[t]);
    }
    return flat;
}

std::vector<int> JointPmf::counts_of(std::size_t flat) const {
    std::vector<int> counts(sizes_.size());
    for (std::size_t t = 0; t < sizes_.size(); ++t) {
        counts[t] = static_cast<int>(flat / strides_[t]);
        flat %= strides_[t];
    }
    return counts;
}

double JointPmf::total() const {
    double s = 0.0;
    for (double p : probs_) s += p;
    return s;
}

double JointPmf::marginal(std::size_t type, int count) const {
    double s = 0.0;
    const std::size_t dim = static_cast<std::size_t>(sizes_.at(type)) + 1;
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
        if (static_cast<int>((flat / strides_[type]) % dim) == count) s += probs_[flat];
    }
    return s;
}

void write_pmf_csv(std::ostream& out, const JointPmf& pmf) {
    for (std::size_t t = 0; t < pmf.type_count(); ++t) out << "x_" << t + 1 << ',';
    out << "prob\n";
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        for (int c : pmf.counts_of(flat)) out << c << ',';
        out << detail::format_double(pmf[flat]) << '\n';
    }
}

JointPmf read_pmf_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty PMF file");
    auto header = detail::split_csv(line);
    if (header.size() < 2 || header.back() != "prob") throw ParseError("PMF header must end in 'prob'");
    const std::size_t m = header.size() - 1;
    for (std::size_t t = 0; t < m; ++t) {
        if (header[t] != "x_" + std::to_string(t + 1)) throw ParseError("PMF header must be x_1,...,x_M,prob");
    }

    std::vector<std::pair<std::vector<int>, double>> rows;
    std::vector<int> sizes(m, 0);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_csv(line);
        if (fields.size() != m + 1) throw ParseError("line " + std::to_string(line_no) + ": wrong field count");
        std::vector<int> counts(m);
        for (std::size_t t = 0; t < m; ++t) {
            long long c = detail::parse_int(fields[t], line_no);
            if (c < 0) throw ParseError("line " + std::to_string(line_no) + ": negative count");
            counts[t] = static_cast<int>(c);
            sizes[t] = std::max(sizes[t], counts[t]);
        }
        double p = detail::parse_double(fields[m], line_no);
        if (!(p >= 0.0)) throw ParseError("line " + std::to_string(line_no) + ": negative probability");
        rows.emplace_back(std::move(counts), p);
    }

    JointPmf pmf(sizes);
    for (const auto& [counts, p] : rows) pmf.at(counts) = p;
    return pmf;
}

}  // namespace hoprisk
