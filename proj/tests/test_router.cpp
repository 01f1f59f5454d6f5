#include <gtest/gtest.h>

#include <random>

#include "hdroute/json_io.hpp"
#include "hdroute/oracle.hpp"
#include "hdroute/router.hpp"
#include "support.hpp"

using namespace hdroute;

namespace {

Digraph load(const std::string& name) { return parse_graph(read_file(std::string(HDROUTE_DATA_DIR) + "/" + name)); }

std::vector<std::string> line_names(const Digraph& g, const Path& p) { return g.names(p); }

}  // namespace

TEST(Router, DiamondPicksHdBestRoute) {
    RouteResult r = best_hd_simple_path(load("diamond.json"));
    Digraph g = load("diamond.json");
    EXPECT_EQ(g.names(r.path), (std::vector<std::string>{"S", "b", "D"}));
    EXPECT_EQ(r.hd_capacity, Capacity(14));
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_EQ(hd_path_capacity(g, g.path_of({"S", "a", "D"})), Capacity(12));
}

TEST(Router, SevenRelayWalkthrough) {
    Digraph g = load("seven_relay.json");
    ChordlessRouter router(g, {.max_iterations = 100, .trace = true});
    const Digraph& l0 = router.initial().graph;

    Path first = router.current_path();
    EXPECT_EQ(line_names(l0, first), (std::vector<std::string>{"S'|S", "S|4", "4|2", "2|1", "1|6", "6|3", "3|2", "2|5",
                                                               "5|D", "D|D'"}));
    EXPECT_EQ(*router.tree().achieved[l0.destination()], Capacity(Rational(100, 11)));

    auto chords = find_chords(router.initial(), first);
    ASSERT_EQ(chords.size(), 2u);
    const Chord& pick = select_first_chord(l0, chords);
    EXPECT_EQ(l0.name(pick.tail), "3|2");
    EXPECT_EQ(l0.name(pick.head), "2|1");
    EXPECT_EQ(pick.span_length(), 4u);
    EXPECT_EQ(l0.name(chords[1].tail), "4|2");
    EXPECT_EQ(l0.name(chords[1].head), "2|5");

    ASSERT_TRUE(router.step());
    EXPECT_EQ(router.replicas_created(), 2u);
    EXPECT_TRUE(router.line().contains("1|6#1"));
    EXPECT_TRUE(router.line().contains("6|3#1"));
    EXPECT_FALSE(router.line().has_edge(router.line().at("6|3"), router.line().at("3|2")));
    EXPECT_TRUE(router.line().has_edge(router.line().at("6|3#1"), router.line().at("3|2")));
    // S|1 fed 1|6 from outside the span, so it also feeds the replica
    EXPECT_TRUE(router.line().has_edge(router.line().at("S|1"), router.line().at("1|6#1")));

    EXPECT_FALSE(router.step());
    RouteResult r = router.run();
    EXPECT_EQ(g.names(r.path), (std::vector<std::string>{"S", "4", "2", "1", "6", "3", "D"}));
    EXPECT_EQ(r.hd_capacity, Capacity(7));
    EXPECT_EQ(r.iterations, 1u);
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.trace[0].chord_tail, "3|2");
    EXPECT_EQ(r.trace[0].tree_capacity_at_destination, Capacity(Rational(100, 11)));
}

TEST(SelectFirstChord, RulesAndErrors) {
    Digraph g;
    for (const char* n : {"p0", "p1", "p2", "p3", "p4", "p5"}) g.add_vertex(n);
    for (int i = 0; i < 5; ++i) g.add_edge(i, i + 1, Capacity(1));
    g.add_edge("p1", "p4", Capacity(1));
    g.add_edge("p2", "p4", Capacity(1));
    Path p = g.path_of({"p0", "p1", "p2", "p3", "p4", "p5"});
    auto chords = find_chords(g, p);
    EXPECT_EQ(g.name(select_first_chord(g, chords).tail), "p2");
    std::vector<Chord> single{chords[1]};
    EXPECT_EQ(select_first_chord(g, single), chords[1]);
    EXPECT_THROW(select_first_chord(g, {}), ValidationError);
}

TEST(Eliminate, SpanOfFourAddsTwoReplicas) {
    // line-like digraph: x -> a -> b -> c -> d, outside vertex o -> b, chord c -> a
    Digraph g;
    for (const char* n : {"x", "a", "b", "c", "d", "o"}) g.add_vertex(n);
    g.add_edge("x", "a", Capacity(9));
    g.add_edge("a", "b", Capacity(8));
    g.add_edge("b", "c", Capacity(7));
    g.add_edge("c", "d", Capacity(6));
    g.add_edge("d", "a", Capacity(5));
    g.add_edge("o", "b", Capacity(4));
    Path p = g.path_of({"x", "a", "b", "c", "d"});
    Chord chord{g.at("d"), g.at("a"), 1, 4, false};
    const std::size_t edges_before = g.edge_count();
    Elimination e = eliminate_chordal_subpath(g, p, chord, [&](Vertex v) { return g.name(v) + "'"; });
    ASSERT_EQ(e.replicas.size(), 2u);
    EXPECT_EQ(g.name(e.replicas[0]), "b'");
    EXPECT_EQ(g.name(e.replicas[1]), "c'");
    EXPECT_EQ(g.name(e.endpoint), "d");
    EXPECT_EQ(*g.capacity(g.at("b'"), g.at("c'")), Capacity(7));     // chain
    EXPECT_EQ(*g.capacity(g.at("c'"), g.at("d")), Capacity(6));      // moved final edge
    EXPECT_FALSE(g.has_edge(g.at("c"), g.at("d")));                   // removed
    EXPECT_EQ(*g.capacity(g.at("o"), g.at("b'")), Capacity(4));      // copied in-edge
    EXPECT_FALSE(g.has_edge(g.at("a"), g.at("b'")));                  // span-internal in-edge not copied
    EXPECT_EQ(g.edge_count(), edges_before + 1 /*chain*/ + 1 /*o->b'*/ + 1 /*c'->d*/ - 1 /*c->d*/);
    // the exact span is gone
    EXPECT_THROW(require_path(g, g.path_of({"a", "b", "c", "d"})), ValidationError);
}

TEST(Eliminate, DegenerateSpanOnlyRemovesTheEdge) {
    Digraph g;
    for (const char* n : {"a", "b"}) g.add_vertex(n);
    g.add_edge("a", "b", Capacity(3));
    Chord chord{g.at("a"), g.at("b"), 0, 1, true};
    Elimination e = eliminate_chordal_subpath(g, g.path_of({"a", "b"}), chord, [&](Vertex) { return std::string("r"); });
    EXPECT_TRUE(e.replicas.empty());
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_EQ(g.vertex_count(), 2u);
}

TEST(RedoSet, CountsReplicasEndpointAndDescendants) {
    WidestPathTree t;
    t.root = 0;
    // 0 -> 1 -> {2, 3}, 3 -> {4, 5}; 6 is a leaf under 0
    t.parent = {std::nullopt, 0, 1, 1, 3, 3, 0, std::nullopt, std::nullopt};
    t.achieved.assign(9, Capacity(1));
    EXPECT_EQ(compute_redo_set(t, 6, {7, 8}).size(), 3u);
    EXPECT_EQ(compute_redo_set(t, 1, {}), (std::vector<Vertex>{1, 2, 3, 4, 5}));
}

TEST(Router, NoPathAndBudget) {
    Digraph g;
    for (const char* n : {"S", "a", "D"}) g.add_vertex(n);
    g.add_edge("S", "a", Capacity(1));
    g.set_source(0);
    g.set_destination(2);
    EXPECT_THROW(best_hd_simple_path(g), NoPathError);
    EXPECT_FALSE(hd_path_decide(g, Capacity(1)));

    try {
        best_hd_simple_path(load("seven_relay.json"), {.max_iterations = 0});
        FAIL() << "budget not enforced";
    } catch (const LimitExceeded& e) {
        EXPECT_STREQ(e.what(), "cycle budget exceeded");
    }
}

TEST(Router, DecideIsInclusive) {
    Digraph g = load("diamond.json");
    EXPECT_TRUE(hd_path_decide(g, Capacity(14)));
    EXPECT_FALSE(hd_path_decide(g, Capacity::parse("14.0001")));
    EXPECT_THROW(hd_path_decide(g, Capacity(0)), ValidationError);
}

TEST(Router, MatchesOracleOnRandomGraphs) {
    std::mt19937_64 rng(515);
    int with_eliminations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        hdtest::RandomGraphShape shape;
        shape.mids = 2 + static_cast<int>(rng() % 5);  // <= 8 vertices
        shape.density = 0.25 + 0.05 * static_cast<double>(rng() % 6);
        shape.fractional = trial % 3 == 0;
        shape.looping = trial % 3 == 1;
        Digraph g = hdtest::random_graph(rng, shape);
        auto oracle = brute_force_best_hd(g);
        if (!oracle) {
            EXPECT_THROW(best_hd_simple_path(g), NoPathError);
            continue;
        }
        RouteResult r;
        try {
            r = best_hd_simple_path(g, {.max_iterations = 500, .trace = true});
        } catch (const LimitExceeded&) {
            continue;  // tie-heavy cycles can need exponentially many eliminations
        }
        ASSERT_EQ(r.hd_capacity, oracle->capacity) << "trial " << trial << "\n" << dump(graph_to_json(g));
        ASSERT_TRUE(is_simple_path(g, r.path));
        ASSERT_EQ(hd_path_capacity(g, r.path), r.hd_capacity);
        ASSERT_EQ(r.path.vertices.front(), g.source());
        ASSERT_EQ(r.path.vertices.back(), g.destination());
        // the destination's tree value never increases across eliminations
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            ASSERT_LE(r.trace[i].tree_capacity_at_destination, r.trace[i - 1].tree_capacity_at_destination);
        }
        if (!r.trace.empty()) {
            ASSERT_LE(r.hd_capacity, r.trace.back().tree_capacity_at_destination);
        }
        if (r.iterations > 0) ++with_eliminations;
    }
    // the suite must actually exercise eliminations
    EXPECT_GT(with_eliminations, 20);
}

TEST(Router, DagNeedsNoEliminations) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 50; ++t) {
        Digraph g;
        g.add_vertex("S");
        for (int i = 0; i < 6; ++i) g.add_vertex("m" + std::to_string(i));
        g.add_vertex("D");
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
                if (rng() % 3 == 0) g.add_edge(u, v, Capacity(1 + static_cast<long long>(rng() % 20)));
            }
        }
        g.set_source(0);
        g.set_destination(g.vertex_count() - 1);
        try {
            EXPECT_EQ(best_hd_simple_path(g).iterations, 0u);
        } catch (const NoPathError&) {
        }
    }
}

// Every elimination keeps the set of chordless S'-D' realizations (collapsed
// to the initial line digraph, with capacities) and removes only chordal ones.
TEST(Router, EliminationPreservesChordlessPaths) {
    std::mt19937_64 rng(88);
    int steps = 0;
    for (int trial = 0; trial < 400 && steps < 150; ++trial) {
        hdtest::RandomGraphShape shape;
        shape.mids = 2 + static_cast<int>(rng() % 3);
        shape.density = 0.45;
        shape.looping = trial % 2 == 0;
        Digraph g = hdtest::random_graph(rng, shape);
        if (g.edge_count() > 9) continue;
        ChordlessRouter router(g);
        if (!router.tree().reachable(router.initial().destination())) continue;
        const Digraph& l0 = router.initial().graph;
        auto origin_now = [&] {
            std::vector<Vertex> o;
            for (Vertex v = 0; v < router.line().vertex_count(); ++v) o.push_back(router.original_of(v));
            return o;
        };
        auto before = hdtest::chordless_signature(router.line(), l0, origin_now());
        for (int k = 0; k < 40 && router.step(); ++k) {
            auto after = hdtest::chordless_signature(router.line(), l0, origin_now());
            ASSERT_EQ(after, before) << "trial " << trial;
            // every kept vertex's tree parent is kept too (resume would throw otherwise)
            ++steps;
        }
    }
    EXPECT_GT(steps, 30);
}

TEST(Router, Deterministic) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        hdtest::RandomGraphShape shape;
        shape.mids = 6;
        Digraph g = hdtest::random_graph(rng, shape);
        try {
            RouteResult a = best_hd_simple_path(g, {.trace = true});
            RouteResult b = best_hd_simple_path(g, {.trace = true});
            ASSERT_EQ(a.path, b.path);
            ASSERT_EQ(a.hd_capacity, b.hd_capacity);
            ASSERT_EQ(a.iterations, b.iterations);
            ASSERT_EQ(a.replicas_created, b.replicas_created);
        } catch (const NoPathError&) {
        }
    }
}
