#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "hoprisk/generators.hpp"
#include "hoprisk/pmf.hpp"

namespace hoprisk {

// C(n, m), zero for m < 0 or m > n. Exact integer arithmetic for n <= 60,
// log-gamma above.
double binomial(int n, int m);

// R_{K_u}(c, d; L) on a complete graph with homogeneous q: the probability
// that exactly c nodes end up compromised given that exactly d (a fixed
// subset of them) were compromised directly.
class CompleteGraphKernel {
public:
    explicit CompleteGraphKernel(double q);

    // Requires 0 <= d <= c <= u and depth >= 1.
    double operator()(int u, int c, int d, int depth);

private:
    double one_round(int u, int c, int d) const;

    double q_;
    std::map<std::tuple<int, int, int, int>, double> memo_;
};

double r_complete(double q, int u, int c, int d, int depth);

struct CompleteHomogParams {
    std::vector<int> type_sizes;
    double p = 0.0;
    double q = 0.0;
    int depth = 1;
};

// Complete graph, p_i = p and q_ij = q for all i != j.
JointPmf complete_homog_pmf(const CompleteHomogParams& params);

// Star with one hub (type 0) and nodes-1 leaves (type 1). Depth 0 is
// rejected; depths above 2 are treated as 2, where a star saturates.
JointPmf star_pmf(const TwoClassParams& params, int nodes, int depth);

// Complete bipartite K_{n1,n2}; only depth 1 has a closed form.
JointPmf bipartite_pmf(const TwoClassParams& params, int n1, int n2, int depth = 1);

}  // namespace hoprisk
