#include "hoprisk/closed_form.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "hoprisk/errors.hpp"

namespace hoprisk {

namespace {

constexpr int exact_binomial_limit = 60;

// x^k with 0^0 = 1
double power(double x, int k) { return std::pow(x, k); }

void require_probability(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw ModelError(std::string(what) + " must be in [0,1]");
}

void require_two_class(const TwoClassParams& t) {
    require_probability(t.p_one, "p_I");
    require_probability(t.p_two, "p_II");
    require_probability(t.q_one_two, "q_I,II");
    require_probability(t.q_two_one, "q_II,I");
}

}  // namespace

double binomial(int n, int m) {
    if (m < 0 || n < 0 || m > n) return 0.0;
    m = std::min(m, n - m);
    if (n <= exact_binomial_limit) {
        std::uint64_t r = 1;
        for (int k = 1; k <= m; ++k) r = r * static_cast<std::uint64_t>(n - m + k) / static_cast<std::uint64_t>(k);
        return static_cast<double>(r);
    }
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0)));
}

CompleteGraphKernel::CompleteGraphKernel(double q) : q_(q) { require_probability(q, "q"); }

double CompleteGraphKernel::one_round(int u, int c, int d) const {
    const double miss = 1.0 - q_;
    return power(1.0 - power(miss, d), c - d) * power(miss, d * (u - c));
}

double CompleteGraphKernel::operator()(int u, int c, int d, int depth) {
    if (d < 0 || d > c || c > u) throw ModelError("r_complete requires 0 <= d <= c <= u");
    if (depth < 1) throw ModelError("r_complete requires depth >= 1");
    if (depth == 1) return one_round(u, c, d);

    const auto key = std::make_tuple(u, c, d, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double sum = 0.0;
    for (int i = 0; i <= c - d; ++i) {
        const double first = binomial(c - d, i) * one_round(u, d + i, d);
        if (first == 0.0) continue;
        sum += first * (*this)(u - d, c - d, i, depth - 1);
    }
    memo_.emplace(key, sum);
    return sum;
}

double r_complete(double q, int u, int c, int d, int depth) {
    CompleteGraphKernel kernel(q);
    return kernel(u, c, d, depth);
}

JointPmf complete_homog_pmf(const CompleteHomogParams& params) {
    require_probability(params.p, "p");
    if (params.depth < 0) throw ModelError("depth must be non-negative");
    if (params.type_sizes.empty()) throw ModelError("at least one type is required");
    for (int s : params.type_sizes) {
        if (s <= 0) throw ModelError("type sizes must be positive");
    }

    const int n = std::accumulate(params.type_sizes.begin(), params.type_sizes.end(), 0);
    const double p = params.p;
    CompleteGraphKernel kernel(params.q);

    // by symmetry the inner sum depends only on chi = sum x_i
    std::vector<double> by_total(static_cast<std::size_t>(n) + 1, 0.0);
    for (int chi = 0; chi <= n; ++chi) {
        double sum = 0.0;
        for (int d = 0; d <= chi; ++d) {
            const double direct = binomial(chi, d) * power(p, d) * power(1.0 - p, n - d);
            if (direct == 0.0) continue;
            const double spread = params.depth == 0 ? (d == chi ? 1.0 : 0.0) : kernel(n, chi, d, params.depth);
            sum += direct * spread;
        }
        by_total[chi] = sum;
    }

    JointPmf pmf(params.type_sizes);
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        const auto x = pmf.counts_of(flat);
        double ways = 1.0;
        int chi = 0;
        for (std::size_t t = 0; t < x.size(); ++t) {
            ways *= binomial(params.type_sizes[t], x[t]);
            chi += x[t];
        }
        pmf[flat] = ways * by_total[chi];
    }
    return pmf;
}

JointPmf star_pmf(const TwoClassParams& params, int nodes, int depth) {
    require_two_class(params);
    if (nodes < 2) throw ModelError("a star needs at least 2 nodes");
    if (depth < 1) throw ModelError("star closed form needs depth >= 1");
    depth = std::min(depth, 2);

    const int leaves = nodes - 1;
    const double pI = params.p_one, pII = params.p_two;
    const double qI = params.q_one_two, qII = params.q_two_one;
    const double pIb = 1.0 - pI, pIIb = 1.0 - pII;
    const double qIb = 1.0 - qI, qIIb = 1.0 - qII;

    JointPmf pmf({1, leaves});
    for (int m = 0; m <= leaves; ++m) {
        const double ways = binomial(leaves, m);
        const std::vector<int> hub_safe{0, m};
        const std::vector<int> hub_hit{1, m};

        pmf.at(hub_safe) = ways * pIb * power(pII, m) * power(pIIb, leaves - m) * power(qIIb, m);

        // hub compromised directly; d of the m leaves direct, the rest via the hub
        double from_hub = 0.0;
        for (int d = 0; d <= m; ++d) {
            from_hub += binomial(m, d) * pI * power(pII, d) * power(pIIb, leaves - d) * power(qI, m - d) *
                        power(qIb, leaves - m);
        }

        double from_leaves = 0.0;
        if (depth == 1) {
            from_leaves = pIb * power(pII, m) * power(pIIb, leaves - m) * (1.0 - power(qIIb, m));
        } else {
            // hub falls to the d direct leaves, then attacks the other leaves
            for (int d = 1; d <= m; ++d) {
                from_leaves += binomial(m, d) * pIb * power(pII, d) * power(pIIb, leaves - d) *
                               (1.0 - power(qIIb, d)) * power(qIb, leaves - m) * power(qI, m - d);
            }
        }
        pmf.at(hub_hit) = ways * (from_leaves + from_hub);
    }
    return pmf;
}

JointPmf bipartite_pmf(const TwoClassParams& params, int n1, int n2, int depth) {
    require_two_class(params);
    if (depth != 1) {
        throw ModelError("complete-bipartite closed form exists only for depth 1; use the exact engine");
    }
    if (n1 <= 0 || n2 <= 0) throw ModelError("both parts must be nonempty");

    const double pI = params.p_one, pII = params.p_two;
    const double missI = 1.0 - params.q_one_two;   // I -> II attempt fails
    const double missII = 1.0 - params.q_two_one;  // II -> I attempt fails

    JointPmf pmf({n1, n2});
    for (int m1 = 0; m1 <= n1; ++m1) {
        for (int m2 = 0; m2 <= n2; ++m2) {
            double sum = 0.0;
            for (int d1 = 0; d1 <= m1; ++d1) {
                for (int d2 = 0; d2 <= m2; ++d2) {
                    sum += binomial(m1, d1) * binomial(m2, d2) * power(pI, d1) * power(pII, d2) *
                           power(1.0 - pI, n1 - d1) * power(1.0 - pII, n2 - d2) *
                           power(1.0 - power(missI, d1), m2 - d2) * power(1.0 - power(missII, d2), m1 - d1) *
                           power(missI, d1 * (n2 - m2)) * power(missII, d2 * (n1 - m1));
                }
            }
            const std::vector<int> x{m1, m2};
            pmf.at(x) = binomial(n1, m1) * binomial(n2, m2) * sum;
        }
    }
    return pmf;
}

}  // namespace hoprisk
