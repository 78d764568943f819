#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldg/pattern_graph.hpp"

#include <sstream>

using namespace ldg;

TEST_CASE("degree profile of small patterns") {
    // C_3: every edge is adjacent to all three edges.
    auto c3 = degree_profile(PatternGraph::cycle(3));
    CHECK(c3.max_degree == 2);
    CHECK(c3.delta_star == 3);
    CHECK(c3.max_degree_core.isomorphic_to(PatternGraph::cycle(3)));

    auto c4 = degree_profile(PatternGraph::cycle(4));
    CHECK(c4.max_degree == 2);
    CHECK(c4.delta_star == 3);
    CHECK(c4.max_degree_core.isomorphic_to(PatternGraph::cycle(4)));

    auto k2 = degree_profile(PatternGraph::single_edge());
    CHECK(k2.max_degree == 1);
    CHECK(k2.delta_star == 1);
    CHECK(k2.max_degree_core.isomorphic_to(PatternGraph::single_edge()));
}

TEST_CASE("degree profile requires edges") {
    CHECK_THROWS_WITH(degree_profile(PatternGraph::empty(3)), "degree_profile: no edges");
}

TEST_CASE("delta-star range over all small connected graphs") {
    for (const auto& h : connected_patterns_up_to(6)) {
        if (h.n_edges() == 0) continue;
        auto prof = degree_profile(h);  // asserts both routes agree internally
        CHECK(prof.max_degree <= prof.delta_star);
        CHECK(prof.delta_star <= 2 * prof.max_degree - 1);
    }
}

TEST_CASE("remove_edge_closure") {
    auto c3 = PatternGraph::cycle(3);
    auto r3 = remove_edge_closure(c3, {{0, 1}});
    CHECK(r3.n_vertices() == 1);
    CHECK(r3.n_edges() == 0);

    auto c4 = PatternGraph::cycle(4);
    auto r4 = remove_edge_closure(c4, {{0, 1}});
    CHECK(r4.isomorphic_to(PatternGraph::single_edge()));

    auto c5 = PatternGraph::cycle(5);
    auto r5 = remove_edge_closure(c5, {{0, 1}, {2, 3}});
    CHECK(r5.n_vertices() == 1);
    CHECK(r5.n_edges() == 0);

    // Re-listing the same edge is idempotent.
    auto again = remove_edge_closure(c4, {{0, 1}, {0, 1}});
    CHECK(again.isomorphic_to(r4));

    CHECK_THROWS(remove_edge_closure(c4, {{0, 2}}));
}

TEST_CASE("quotients of small patterns") {
    auto k2 = quotients(PatternGraph::single_edge());
    REQUIRE(k2.entries.size() == 1);
    CHECK(k2.entries[0].quotient.isomorphic_to(PatternGraph::single_edge()));

    auto c4 = quotients(PatternGraph::cycle(4));
    CHECK(c4.entries.size() == 4);
    // Identity first.
    CHECK(c4.entries[0].n_parts == 4);
    CHECK(c4.entries[0].quotient.isomorphic_to(PatternGraph::cycle(4)));

    auto c3 = quotients(PatternGraph::cycle(3));
    CHECK(c3.entries.size() == 1);

    CHECK_THROWS_WITH(quotients(PatternGraph::cycle(9)),
                      "pattern too large for quotient enumeration");
}

TEST_CASE("quotient degree and edge-ratio bounds") {
    for (const auto& h : connected_patterns_up_to(6)) {
        if (h.n_vertices() > 6 || h.n_edges() == 0) continue;
        const int dh = degree_profile(h).max_degree;
        for (const auto& entry : quotients(h)) {
            const auto& f = entry.quotient;
            if (f.n_edges() > 0) CHECK(degree_profile(f).max_degree <= dh);
            if (f.n_vertices() < h.n_vertices()) {
                CHECK(h.n_edges() - f.n_edges() <= dh * (h.n_vertices() - f.n_vertices()));
            }
        }
    }
}

TEST_CASE("independence polynomial") {
    CHECK(independence_polynomial(PatternGraph::cycle(3)) ==
          std::vector<std::int64_t>{1, 3});
    CHECK(independence_polynomial(PatternGraph::cycle(4)) ==
          std::vector<std::int64_t>{1, 4, 2});
    CHECK(independence_polynomial(PatternGraph::empty(3)) ==
          std::vector<std::int64_t>{1, 3, 3, 1});
}

TEST_CASE("independence polynomial cycle recursion") {
    // P_{C_l} = P_{C_{l-1}} + x P_{C_{l-2}}, with P_{C_2} = 1+2x and P_{C_3} = 1+3x.
    std::vector<std::vector<std::int64_t>> p(13);
    p[2] = {1, 2};
    p[3] = {1, 3};
    for (int l = 4; l <= 12; ++l) {
        p[l].assign(std::max(p[l - 1].size(), p[l - 2].size() + 1), 0);
        for (std::size_t i = 0; i < p[l - 1].size(); ++i) p[l][i] += p[l - 1][i];
        for (std::size_t i = 0; i < p[l - 2].size(); ++i) p[l][i + 1] += p[l - 2][i];
        CHECK(independence_polynomial(PatternGraph::cycle(l)) == p[l]);
    }
}

TEST_CASE("classification") {
    auto c4 = classify(PatternGraph::cycle(4));
    CHECK(c4.bipartite);
    CHECK(c4.regular);
    CHECK(c4.seminorming == TriState::Yes);
    CHECK(c4.sidorenko == TriState::Yes);

    auto c3 = classify(PatternGraph::cycle(3));
    CHECK_FALSE(c3.bipartite);
    CHECK(c3.seminorming == TriState::No);

    auto k24 = classify(PatternGraph::complete_bipartite(2, 4));
    CHECK(k24.seminorming == TriState::Yes);

    auto k23 = classify(PatternGraph::complete_bipartite(2, 3));
    CHECK(k23.bipartite);
    CHECK(k23.seminorming == TriState::Unknown);

    auto c6 = classify(PatternGraph::cycle(6));
    CHECK(c6.seminorming == TriState::Yes);

    auto c5 = classify(PatternGraph::cycle(5));
    CHECK(c5.seminorming == TriState::No);

    auto star = classify(PatternGraph::star(3));
    CHECK(star.bipartite);
    CHECK_FALSE(star.regular);
    CHECK(star.seminorming == TriState::Unknown);
}

TEST_CASE("named patterns and file format") {
    CHECK(PatternGraph::from_name("C5").isomorphic_to(PatternGraph::cycle(5)));
    CHECK(PatternGraph::from_name("K2").isomorphic_to(PatternGraph::single_edge()));
    CHECK(PatternGraph::from_name("K4").isomorphic_to(PatternGraph::complete(4)));
    CHECK(PatternGraph::from_name("K_{2,4}").isomorphic_to(PatternGraph::complete_bipartite(2, 4)));
    CHECK(PatternGraph::from_name("star_3").isomorphic_to(PatternGraph::star(3)));
    CHECK(PatternGraph::from_name("path_4").isomorphic_to(PatternGraph::path(4)));
    CHECK_THROWS(PatternGraph::from_name("frobnitz"));

    std::istringstream in("# triangle\n3 3\n0 1\n1 2\n# middle comment\n0 2\n");
    auto g = PatternGraph::load(in);
    CHECK(g.isomorphic_to(PatternGraph::cycle(3)));
}

TEST_CASE("pattern graph validation") {
    CHECK_THROWS(PatternGraph(3, {{0, 0}}));
    CHECK_THROWS(PatternGraph(3, {{0, 1}, {1, 0}}));
    CHECK_THROWS(PatternGraph(2, {{0, 2}}));
    CHECK(PatternGraph::cycle(5).connected());
    CHECK_FALSE(PatternGraph(4, {{0, 1}, {2, 3}}).connected());
}

TEST_CASE("connected pattern enumeration counts") {
    auto pats = connected_patterns_up_to(4);
    // 1 + 1 + 2 + 6 connected graphs on 1..4 vertices up to isomorphism.
    CHECK(pats.size() == 10);
}
