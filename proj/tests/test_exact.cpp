#include <doctest.h>

#include <cmath>
#include <random>

#include "hoprisk/errors.hpp"
#include "hoprisk/exact.hpp"
#include "hoprisk/generators.hpp"
#include "k5_reference.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hoprisk;
using testing::cell;
using testing::max_abs_diff;

namespace {

NetworkModel two_nodes(double p0, double p1, double q01, double q10) {
    const std::vector<NodeSpec> nodes{{0, 0, p0}, {1, 0, p1}};
    const std::vector<EdgeSpec> edges{{0, 1, q01, q10}};
    return build_network(nodes, edges);
}

NetworkModel path3(double p0, double q) {
    const std::vector<NodeSpec> nodes{{0, 0, p0}, {1, 0, 0.0}, {2, 0, 0.0}};
    const std::vector<EdgeSpec> edges{{0, 1, q, q}, {1, 2, q, q}};
    return build_network(nodes, edges);
}

NodeSet set_of(std::initializer_list<NodeId> ids) {
    NodeSet s;
    for (NodeId i : ids) s = s | NodeSet::single(i);
    return s;
}

}  // namespace

TEST_CASE("one_hop_prob") {
    SUBCASE("single attempt across one edge") {
        ExactEngine eng(two_nodes(0.0, 0.0, 0.5, 0.5));
        CHECK(eng.one_hop_prob(set_of({0, 1}), set_of({0, 1}), set_of({0})) == doctest::Approx(0.5));
    }
    SUBCASE("C = D with q = 0 is certain") {
        const int sizes[] = {4};
        ExactEngine eng(make_complete(sizes, 0.3, 0.0));
        CHECK(eng.one_hop_prob(eng.all_nodes(), set_of({1, 2}), set_of({1, 2})) == 1.0);
    }
    SUBCASE("K5 lone seed fails four attempts") {
        ExactEngine eng(testing::k5_network());
        CHECK(eng.one_hop_prob(eng.all_nodes(), set_of({3}), set_of({3})) == doctest::Approx(std::pow(0.9, 4)));
    }
    SUBCASE("empty seed with nonempty target has probability zero") {
        ExactEngine eng(testing::k5_network());
        CHECK(eng.one_hop_prob(eng.all_nodes(), set_of({1}), NodeSet{}) == 0.0);
    }
    SUBCASE("containment is enforced") {
        ExactEngine eng(testing::k5_network());
        CHECK_THROWS_AS(eng.one_hop_prob(set_of({0, 1}), set_of({0, 2}), set_of({0})), ModelError);
        CHECK_THROWS_AS(eng.one_hop_prob(eng.all_nodes(), set_of({0}), set_of({1})), ModelError);
    }
}

TEST_CASE("r_prob") {
    ExactEngine eng(testing::k5_network());
    const NodeSet v = eng.all_nodes();

    CHECK(eng.r_prob(v, set_of({0, 3}), set_of({0}), 2) == doctest::Approx(0.1 * std::pow(0.9, 6)).epsilon(1e-12));
    CHECK(eng.r_prob(v, set_of({0, 3}), set_of({0, 3}), 2) == doctest::Approx(std::pow(0.9, 6)).epsilon(1e-12));
    for (int depth = 1; depth <= 4; ++depth) CHECK(eng.r_prob(v, NodeSet{}, NodeSet{}, depth) == 1.0);

    CHECK_THROWS_AS(eng.r_prob(v, set_of({0}), set_of({0}), 0), ModelError);
    CHECK_THROWS_AS(eng.r_prob(v, set_of({0}), set_of({1}), 2), ModelError);
    CHECK(eng.memo_size() > 0);
}

TEST_CASE("event_prob") {
    SUBCASE("nothing compromised on K5") {
        ExactEngine eng(testing::k5_network());
        CHECK(eng.event_prob(NodeSet{}, 2) == doctest::Approx(std::pow(0.8, 5)).epsilon(1e-12));
    }
    SUBCASE("zero direct probability") {
        const int sizes[] = {2, 2};
        ExactEngine eng(make_complete(sizes, 0.0, 0.7));
        CHECK(eng.event_prob(set_of({1}), 3) == 0.0);
        CHECK(eng.event_prob(eng.all_nodes(), 3) == 0.0);
    }
    SUBCASE("certain cascade along a path") {
        const NetworkModel net = path3(0.5, 1.0);
        const oracle::CountMap ref = oracle::brute_force_pmf(net, 2);
        CHECK(ref.at({3}) == doctest::Approx(0.5));
        ExactEngine eng(net);
        CHECK(eng.event_prob(set_of({0, 1, 2}), 2) == doctest::Approx(0.5));
    }
    SUBCASE("depth zero is direct compromise only") {
        ExactEngine eng(testing::k5_network());
        CHECK(eng.event_prob(set_of({0, 4}), 0) == doctest::Approx(0.2 * 0.2 * std::pow(0.8, 3)));
    }
    SUBCASE("unknown nodes") {
        ExactEngine eng(testing::k5_network());
        CHECK_THROWS_AS(eng.event_prob(set_of({7}), 1), ModelError);
    }
}

TEST_CASE("joint_pmf on the K5 example matches the reference table") {
    const NetworkModel net = testing::k5_network();
    for (int depth = 2; depth <= 4; ++depth) {
        const JointPmf pmf = joint_pmf(net, depth);
        CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-12));
        for (int x1 = 0; x1 <= 2; ++x1)
            for (int x2 = 0; x2 <= 3; ++x2) {
                CAPTURE(depth);
                CAPTURE(x1);
                CAPTURE(x2);
                CHECK(std::abs(cell(pmf, x1, x2) - testing::k5_table[depth - 2][x1][x2]) <= 5e-5);
            }
    }
    const JointPmf l4 = joint_pmf(net, 4);
    CHECK(std::abs(l4.marginal(1, 3) - 0.0565) <= 5e-5);
}

TEST_CASE("joint_pmf without propagation is a product of binomials") {
    const int sizes[] = {2, 3};
    const NetworkModel net = make_complete(sizes, 0.3, 0.0);
    auto binom = [](int n, int k, double p) {
        double c = 1.0;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
    };
    for (int depth : {0, 1, 3}) {
        const JointPmf pmf = joint_pmf(net, depth);
        for (int x1 = 0; x1 <= 2; ++x1)
            for (int x2 = 0; x2 <= 3; ++x2)
                CHECK(cell(pmf, x1, x2) == doctest::Approx(binom(2, x1, 0.3) * binom(3, x2, 0.3)).epsilon(1e-12));
    }
}

TEST_CASE("joint_pmf agrees with the enumeration oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const NetworkModel net = oracle::random_network(rng, n, 6, 1 + rng() % std::min<std::size_t>(n, 3));
        for (int depth = 0; depth <= 3; ++depth) {
            const JointPmf pmf = joint_pmf(net, depth);
            CAPTURE(trial);
            CAPTURE(depth);
            CHECK(max_abs_diff(pmf, oracle::brute_force_pmf(net, depth)) <= 1e-12);
            CHECK(std::abs(pmf.total() - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("degenerate q values 0 and 1 need no special casing") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        NetworkModel base = oracle::random_network(rng, 5, 6, 2);
        std::vector<EdgeSpec> edges = base.edge_specs();
        for (EdgeSpec& e : edges) {
            e.q_uv = static_cast<double>(rng() % 2);
            e.q_vu = static_cast<double>(rng() % 2);
        }
        std::vector<NodeSpec> nodes = base.node_specs();
        for (NodeSpec& s : nodes)
            if (rng() % 3 == 0) s.p = static_cast<double>(rng() % 2);
        const NetworkModel net = build_network(nodes, edges);
        for (int depth = 1; depth <= 3; ++depth)
            CHECK(max_abs_diff(joint_pmf(net, depth), oracle::brute_force_pmf(net, depth)) <= 1e-12);
    }
}

TEST_CASE("relabelling the nodes of a homogeneous complete graph leaves the PMF unchanged") {
    const int sizes[] = {2, 3};
    const NetworkModel net = make_complete(sizes, 0.25, 0.35);
    std::vector<NodeId> perm{4, 1, 3, 0, 2};
    // perm maps new id -> old id; types move with their node
    std::vector<NodeSpec> nodes;
    std::vector<NodeId> inverse(5);
    for (NodeId i = 0; i < 5; ++i) inverse[perm[i]] = i;
    for (NodeId i = 0; i < 5; ++i) nodes.push_back({i, net.type_of(perm[i]), net.p(perm[i])});
    std::vector<EdgeSpec> edges;
    for (const EdgeSpec& e : net.edge_specs()) edges.push_back({inverse[e.u], inverse[e.v], e.q_uv, e.q_vu});
    const NetworkModel relabelled = build_network(nodes, edges);
    for (int depth = 1; depth <= 4; ++depth)
        CHECK(max_abs_diff(joint_pmf(net, depth), joint_pmf(relabelled, depth)) <= 1e-14);
}

TEST_CASE("depth saturates at the node count") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const NetworkModel net = oracle::random_network(rng, n, 10, 2);
        const JointPmf at_n = joint_pmf(net, static_cast<int>(n));
        for (int extra = 1; extra <= 3; ++extra) CHECK(joint_pmf(net, static_cast<int>(n) + extra) == at_n);
    }
}

TEST_CASE("repeated evaluation is bit-identical") {
    const NetworkModel net = testing::k5_network();
    CHECK(joint_pmf(net, 3) == joint_pmf(net, 3));
}

TEST_CASE("node cap") {
    std::vector<NodeSpec> nodes;
    for (NodeId i = 0; i < 30; ++i) nodes.push_back({i, 0, 0.1});
    const NetworkModel big = build_network(nodes, {});
    try {
        (void)joint_pmf(big, 2);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("simulate") != std::string::npos);
        CHECK(e.nodes() == 30);
        CHECK(e.cap() == 20);
    }
    const NetworkModel small = build_network(std::span(nodes).first(6), {});
    CHECK_THROWS_AS(joint_pmf(small, 1, ExactOptions{5}), CapExceeded);
    CHECK(joint_pmf(small, 1, ExactOptions{6}).total() == doctest::Approx(1.0));

    std::vector<NodeSpec> huge;
    for (NodeId i = 0; i < 65; ++i) huge.push_back({i, 0, 0.1});
    CHECK_THROWS_AS(ExactEngine(build_network(huge, {})), CapExceeded);
}
