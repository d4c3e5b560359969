#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace hoprisk {

// Dense joint PMF of (X_1, ..., X_M) with X_i in 0..N_i. Cells are stored in
// lexicographic order of the count vector (last coordinate fastest).
class JointPmf {
public:
    JointPmf() = default;
    explicit JointPmf(std::vector<int> type_sizes);

    const std::vector<int>& type_sizes() const noexcept { return sizes_; }
    std::size_t type_count() const noexcept { return sizes_.size(); }
    std::size_t cell_count() const noexcept { return probs_.size(); }

    double& at(std::span<const int> counts) { return probs_[flat_index(counts)]; }
    double at(std::span<const int> counts) const { return probs_[flat_index(counts)]; }
    double& operator[](std::size_t flat) { return probs_[flat]; }
    double operator[](std::size_t flat) const { return probs_[flat]; }

    std::span<const double> probs() const noexcept { return probs_; }

    std::size_t flat_index(std::span<const int> counts) const;
    std::vector<int> counts_of(std::size_t flat) const;

    double total() const;
    // P(X_type = count)
    double marginal(std::size_t type, int count) const;

    friend bool operator==(const JointPmf&, const JointPmf&) = default;

private:
    std::vector<int> sizes_;
    std::vector<std::size_t> strides_;
    std::vector<double> probs_;
};

// CSV with header x_1,...,x_M,prob; one row per cell in lexicographic
// order; probabilities printed with 17 significant digits.
void write_pmf_csv(std::ostream& out, const JointPmf& pmf);
// Inverse of write_pmf_csv. N_i is taken as the largest count seen in
// column i; cells missing from the file are zero.
JointPmf read_pmf_csv(std::istream& in);

}  // namespace hoprisk
