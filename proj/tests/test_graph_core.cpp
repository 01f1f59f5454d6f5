#include <gtest/gtest.h>

#include <random>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "support.hpp"

using namespace hdroute;

namespace {

Digraph chain(std::initializer_list<const char*> names) {
    Digraph g;
    for (const char* n : names) g.add_vertex(n);
    return g;
}

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

}  // namespace

TEST(Capacity, ParsesDecimalsFractionsAndInfinity) {
    EXPECT_EQ(Capacity::parse("1.5"), Capacity(Rational(3, 2)));
    EXPECT_EQ(Capacity::parse("6/4"), Capacity(Rational(3, 2)));
    EXPECT_EQ(Capacity::parse("14"), Capacity(14));
    EXPECT_EQ(Capacity::parse("0.000001"), Capacity(Rational(1, 1000000)));
    EXPECT_EQ(Capacity::parse("-2"), Capacity(-2));
    EXPECT_TRUE(Capacity::parse("inf").is_unbounded());
    EXPECT_TRUE(Capacity::parse("Infinity").is_unbounded());
    EXPECT_THROW(Capacity::parse(""), ParseError);
    EXPECT_THROW(Capacity::parse("1/0"), ParseError);
    EXPECT_THROW(Capacity::parse("abc"), ParseError);
    EXPECT_THROW(Capacity::parse("1.2.3"), ParseError);
}

TEST(Capacity, RendersFractionAndDecimal) {
    EXPECT_EQ(Capacity(14).to_fraction(), "14/1");
    EXPECT_EQ(Capacity(Rational(60, 7)).to_fraction(), "60/7");
    EXPECT_EQ(Capacity(Rational(60, 7)).to_decimal(6), "8.571429");
    EXPECT_EQ(Capacity(Rational(2, 3)).to_decimal(6), "0.666667");
    EXPECT_EQ(Capacity::unbounded().to_fraction(), "inf");
}

TEST(Capacity, UnboundedIsAbsorbingMaximum) {
    const Capacity inf = Capacity::unbounded();
    const Capacity c(7);
    EXPECT_EQ(min(inf, c), c);
    EXPECT_EQ(max(inf, c), inf);
    EXPECT_EQ(half_harmonic(inf, c), c);
    EXPECT_EQ(half_harmonic(c, inf), c);
    EXPECT_TRUE(half_harmonic(inf, inf).is_unbounded());
    EXPECT_LT(c, inf);
}

TEST(Capacity, HalfHarmonicExamples) {
    EXPECT_EQ(half_harmonic(Capacity(20), Capacity(20)), Capacity(10));
    const Rational z(2);
    EXPECT_EQ(half_harmonic(Capacity(z * Rational(3, 2)), Capacity(z * Rational(3, 2))), Capacity(z * Rational(3, 4)));
    EXPECT_EQ(half_harmonic(Capacity(3 * z), Capacity(z * Rational(3, 2))), Capacity(z));
}

TEST(Capacity, HalfHarmonicProperties) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(1, 500), den(1, 40);
    for (int t = 0; t < 2000; ++t) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        Capacity ca(a), cb(b);
        Capacity h = half_harmonic(ca, cb);
        ASSERT_EQ(h, half_harmonic(cb, ca));
        ASSERT_EQ(h.value(), a * b / (a + b));
        const Capacity& lo = min(ca, cb);
        ASSERT_LE(Capacity(lo.value() / 2), h);
        ASSERT_LT(h, lo);
        ASSERT_EQ(half_harmonic(ca, ca), Capacity(a / 2));
        // strictly increasing in each argument
        ASSERT_LT(h, half_harmonic(Capacity(a + Rational(1, 3)), cb));
    }
}

TEST(Validate, ReportsEachViolation) {
    Digraph g = chain({"S", "a", "D"});
    g.add_edge("a", "a", Capacity(1));
    g.add_edge("S", "a", Capacity(0));
    g.add_edge("S", "a", Capacity(3));
    auto v = validate(g);
    EXPECT_TRUE(has_kind(v, Violation::Kind::SelfLoop));
    EXPECT_TRUE(has_kind(v, Violation::Kind::ParallelEdge));
    EXPECT_TRUE(has_kind(v, Violation::Kind::NonPositiveCapacity));
    EXPECT_TRUE(has_kind(v, Violation::Kind::MissingSource));
    EXPECT_TRUE(has_kind(v, Violation::Kind::MissingDestination));
    auto self = std::find_if(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::SelfLoop; });
    EXPECT_EQ(self->message, "self-loop at a");
    auto nonpos = std::find_if(v.begin(), v.end(),
                               [](const Violation& x) { return x.kind == Violation::Kind::NonPositiveCapacity; });
    EXPECT_NE(nonpos->message.find("nonpositive capacity"), std::string::npos);
    EXPECT_THROW(require_valid(g), ValidationError);
}

TEST(Validate, MinimalGraphIsValid) {
    Digraph g = chain({"S", "D"});
    g.add_edge("S", "D", Capacity(5));
    g.set_source(g.at("S"));
    g.set_destination(g.at("D"));
    EXPECT_TRUE(is_valid(g));
}

TEST(Validate, SameTerminalsRejected) {
    Digraph g = chain({"S", "D"});
    g.set_source(0);
    g.set_destination(0);
    EXPECT_TRUE(has_kind(validate(g), Violation::Kind::SameTerminals));
}

TEST(Validate, AntiparallelEdgesAccepted) {
    Digraph g = chain({"S", "a", "b", "D"});
    g.add_edge("S", "a", Capacity(1));
    g.add_edge("a", "b", Capacity(1));
    g.add_edge("b", "a", Capacity(1));
    g.add_edge("b", "D", Capacity(1));
    g.set_source(0);
    g.set_destination(3);
    EXPECT_TRUE(is_valid(g));
}

TEST(DigraphTest, DuplicateVertexNamesRejected) {
    Digraph g;
    g.add_vertex("x");
    EXPECT_THROW(g.add_vertex("x"), ValidationError);
}

TEST(SimplePath, Examples) {
    Digraph g = chain({"S", "v1", "v2", "v3", "D"});
    g.add_edge("S", "v1", Capacity(1));
    g.add_edge("v1", "v2", Capacity(1));
    g.add_edge("v2", "v3", Capacity(1));
    g.add_edge("v3", "v1", Capacity(1));
    g.add_edge("v1", "D", Capacity(1));
    g.add_edge("S", "D", Capacity(1));
    EXPECT_TRUE(is_simple_path(g, g.path_of({"S", "v1", "D"})));
    EXPECT_FALSE(is_simple_path(g, g.path_of({"S", "v1", "v2", "v3", "v1", "D"})));
    EXPECT_TRUE(is_simple_path(g, g.path_of({"S", "D"})));
    EXPECT_THROW(is_simple_path(g, g.path_of({"S", "v2"})), ValidationError);
}

TEST(Cycles, Examples) {
    Digraph dag = chain({"a", "b", "c"});
    dag.add_edge("a", "b", Capacity(1));
    dag.add_edge("b", "c", Capacity(1));
    dag.add_edge("a", "c", Capacity(1));
    EXPECT_EQ(count_elementary_cycles(dag, 100).count, 0u);

    Digraph tri = chain({"a", "b", "c"});
    tri.add_edge("a", "b", Capacity(1));
    tri.add_edge("b", "c", Capacity(1));
    tri.add_edge("c", "a", Capacity(1));
    EXPECT_EQ(count_elementary_cycles(tri, 100).count, 1u);
    tri.add_edge("a", "c", Capacity(1));  // closes a 2-cycle with c -> a
    EXPECT_EQ(count_elementary_cycles(tri, 100).count, 2u);

    Digraph two = chain({"a", "b", "c", "d"});
    two.add_edge("a", "b", Capacity(1));
    two.add_edge("b", "a", Capacity(1));
    two.add_edge("c", "d", Capacity(1));
    two.add_edge("d", "c", Capacity(1));
    EXPECT_EQ(count_elementary_cycles(two, 100).count, 2u);

    EXPECT_THROW(count_elementary_cycles(two, 0), ValidationError);
}

TEST(Cycles, LimitStopsEarly) {
    Digraph k;
    for (int i = 0; i < 5; ++i) k.add_vertex("v" + std::to_string(i));
    for (Vertex u = 0; u < 5; ++u) {
        for (Vertex v = 0; v < 5; ++v) {
            if (u != v) k.add_edge(u, v, Capacity(1));
        }
    }
    // complete digraph on 5 vertices: sum_{k>=2} C(5,k)(k-1)! = 10+20+30+24 = 84
    EXPECT_EQ(count_elementary_cycles(k, 1000).count, 84u);
    CycleCount c = count_elementary_cycles(k, 10);
    EXPECT_TRUE(c.exceeds_limit);
    EXPECT_EQ(c.count, 11u);
}

TEST(Cycles, AgreesWithSubsetEnumeration) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        hdtest::RandomGraphShape shape;
        shape.mids = 1 + static_cast<int>(rng() % 4);  // <= 6 vertices
        shape.density = 0.2 + 0.1 * static_cast<double>(rng() % 6);
        Digraph g = hdtest::random_graph(rng, shape);
        ASSERT_EQ(count_elementary_cycles(g, 1'000'000).count, hdtest::exhaustive_cycle_count(g)) << "trial " << t;
    }
}
