#include <gtest/gtest.h>

#include <set>

#include "surgery_paths.hpp"
#include "twobridge/diagram.hpp"

using namespace twobridge;
using twobridge::testing::corner_on;
using twobridge::testing::find_path;
using twobridge::testing::surgery_gammas;

namespace {

const Fraction inf = Fraction::infinity();

std::set<Fraction> chain_vertices(const std::vector<Quad>& chain) {
    std::set<Fraction> out;
    for (const auto& q : chain) out.insert(q.vertices.begin(), q.vertices.end());
    return out;
}

std::size_t count_type(const Complex& cx, EdgeType t) {
    std::size_t n = 0;
    for (const auto& e : cx.edges()) n += e.etype == t;
    return n;
}

std::set<Fraction> side_set(const Complex& cx, const DiagramVertex& v) {
    const auto [a, b] = cx.corner_side(std::get<Corner>(v));
    return {a, b};
}

}  // namespace

TEST(QuadChain, SingleQuadForOneHalf) {
    const auto chain = quad_chain(make_link(1, 2));
    ASSERT_EQ(chain.size(), 1u);
    EXPECT_EQ(chain[0].g, GMat{});
}

TEST(QuadChain, ThreeEighths) {
    const auto chain = quad_chain(make_link(3, 8));
    EXPECT_EQ(chain.size(), 3u);
    const std::set<Fraction> expected{inf,           Fraction(0),    Fraction(1),    Fraction(1, 2),
                                      Fraction(1, 3), Fraction(1, 4), Fraction(2, 5), Fraction(3, 8)};
    EXPECT_EQ(chain_vertices(chain), expected);
}

TEST(QuadChain, SevenSixteenths) {
    const auto v = chain_vertices(quad_chain(make_link(7, 16)));
    for (const Fraction f : {Fraction(2, 5), Fraction(3, 7), Fraction(4, 9), Fraction(7, 16)}) {
        EXPECT_TRUE(v.contains(f)) << f;
    }
}

TEST(QuadChain, AdjacentQuadsShareOneSide) {
    for (const auto& link : enumerate_links(10, true)) {
        const auto chain = quad_chain(link);
        EXPECT_TRUE(chain.front().has_vertex(inf));
        EXPECT_TRUE(chain.back().has_vertex(link.fraction()));
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            int shared = 0;
            for (const auto& v : chain[i].vertices) shared += chain[i + 1].has_vertex(v);
            EXPECT_EQ(shared, 2) << link.to_string() << " quad " << i;
        }
    }
}

TEST(BuildDiagram, OverQ) {
    const auto chain = quad_chain(make_link(1, 2));
    const Complex d1 = build_diagram(chain, DiagramKind::d1);
    EXPECT_EQ(count_type(d1, EdgeType::A), 4u);
    EXPECT_EQ(count_type(d1, EdgeType::C), 1u);
    EXPECT_EQ(d1.cells().size(), 2u);
    EXPECT_TRUE(d1.find_edge(d1.vertex_id(Fraction(0)), d1.vertex_id(Fraction(1))).has_value());
    for (const auto& [u, v] : {std::pair{inf, Fraction(0)}, {inf, Fraction(1)}, {Fraction(0), Fraction(1, 2)},
                                {Fraction(1), Fraction(1, 2)}}) {
        const auto e = d1.find_edge(d1.vertex_id(u), d1.vertex_id(v));
        ASSERT_TRUE(e.has_value());
        EXPECT_EQ(d1.edges()[*e].etype, EdgeType::A);
    }

    const Complex d0 = build_diagram(chain, DiagramKind::d0);
    EXPECT_EQ(count_type(d0, EdgeType::B), 4u);
    EXPECT_EQ(count_type(d0, EdgeType::D), 1u);
    EXPECT_EQ(d0.cells().size(), 2u);
    const auto diag = d0.find_edge(d0.vertex_id(inf), d0.vertex_id(Fraction(1, 2)));
    ASSERT_TRUE(diag.has_value());
    EXPECT_EQ(d0.edges()[*diag].etype, EdgeType::D);

    const Complex dt = build_diagram(chain, DiagramKind::dt);
    std::size_t rects = 0, tris = 0;
    for (const auto& c : dt.cells()) (c.kind == CellKind::rectangle ? rects : tris) += 1;
    EXPECT_EQ(rects, 1u);
    EXPECT_EQ(tris, 4u);
    EXPECT_EQ(dt.vertices().size(), 8u);
    EXPECT_EQ(count_type(dt, EdgeType::A), 4u);
    EXPECT_EQ(count_type(dt, EdgeType::B), 4u);
    EXPECT_EQ(count_type(dt, EdgeType::C), 2u);
    EXPECT_EQ(count_type(dt, EdgeType::D), 2u);
}

TEST(BuildDiagram, RepresentativeEdges) {
    const Complex dt = build_diagram(quad_chain(make_link(1, 2)), DiagramKind::dt);
    const auto c0 = corner_on(dt, inf, Fraction(0));
    const auto check = [&](const DiagramVertex& tail, EdgeType t) {
        const TypedEdge e = dt.traverse(dt.vertex_id(tail), dt.vertex_id(c0));
        EXPECT_EQ(e.etype, t);
        EXPECT_EQ(e.sign, 1);
        EXPECT_EQ(e.g, GMat{});
    };
    check(inf, EdgeType::A);
    check(Fraction(0), EdgeType::B);
    check(corner_on(dt, Fraction(1), inf), EdgeType::C);
    check(corner_on(dt, Fraction(0), Fraction(1, 2)), EdgeType::D);
}

TEST(BuildDiagram, FirstRegionBoundary) {
    // The triangle at 1/0 reads A forward, C backward, A backward.
    const Complex dt = build_diagram(quad_chain(make_link(1, 2)), DiagramKind::dt);
    const Cell* r0 = nullptr;
    for (const auto& c : dt.cells()) {
        if (c.kind == CellKind::triangle && c.region == 0) r0 = &c;
    }
    ASSERT_NE(r0, nullptr);
    const auto& vs = r0->vertices;
    EXPECT_EQ(dt.vertices()[vs[0]], DiagramVertex(inf));
    const std::vector<std::pair<EdgeType, int>> expected{{EdgeType::A, 1}, {EdgeType::C, -1}, {EdgeType::A, -1}};
    for (std::size_t i = 0; i < 3; ++i) {
        const TypedEdge e = dt.traverse(vs[i], vs[(i + 1) % 3]);
        EXPECT_EQ(e.etype, expected[i].first) << i;
        EXPECT_EQ(e.sign, expected[i].second) << i;
    }
}

TEST(BuildDiagram, EdgeMatricesCarryRepresentatives) {
    const std::set<Fraction> a0{inf, Fraction(0)};
    const std::set<Fraction> c0_tail{Fraction(1), inf};
    const std::set<Fraction> d0_tail{Fraction(0), Fraction(1, 2)};
    const auto image = [](const GMat& g, const std::set<Fraction>& s) {
        std::set<Fraction> out;
        for (const auto& f : s) out.insert(g.apply(f));
        return out;
    };
    for (const auto& link : enumerate_links(9, true)) {
        const Diagrams dg = build_diagrams(link);
        for (const auto& e : dg.dt.edges()) {
            const GMat& g = e.g;
            switch (e.etype) {
                case EdgeType::A:
                    EXPECT_EQ(std::get<Fraction>(e.tail), g.apply(inf));
                    EXPECT_EQ(side_set(dg.dt, e.head), image(g, a0));
                    break;
                case EdgeType::B:
                    EXPECT_EQ(std::get<Fraction>(e.tail), g.apply(Fraction(0)));
                    EXPECT_EQ(side_set(dg.dt, e.head), image(g, a0));
                    break;
                case EdgeType::C:
                    EXPECT_EQ(side_set(dg.dt, e.tail), image(g, c0_tail));
                    EXPECT_EQ(side_set(dg.dt, e.head), image(g, a0));
                    break;
                case EdgeType::D:
                    EXPECT_EQ(side_set(dg.dt, e.tail), image(g, d0_tail));
                    EXPECT_EQ(side_set(dg.dt, e.head), image(g, a0));
                    break;
            }
        }
        for (const auto& e : dg.d1.edges()) {
            const Fraction tail = std::get<Fraction>(e.tail);
            const Fraction head = std::get<Fraction>(e.head);
            if (e.etype == EdgeType::A) {
                EXPECT_EQ(tail, e.g.apply(inf));
                EXPECT_EQ(head, e.g.apply(Fraction(0)));
            } else {
                EXPECT_EQ(tail, e.g.apply(Fraction(1)));
                EXPECT_EQ(head, e.g.apply(Fraction(0)));
                EXPECT_EQ(head.num() % 2, 0);
            }
        }
        for (const auto& e : dg.d0.edges()) {
            const Fraction tail = std::get<Fraction>(e.tail);
            const Fraction head = std::get<Fraction>(e.head);
            if (e.etype == EdgeType::B) {
                EXPECT_EQ(tail, e.g.apply(Fraction(0)));
                EXPECT_EQ(head, e.g.apply(inf));
            } else {
                EXPECT_EQ(tail, e.g.apply(Fraction(1, 2)));
                EXPECT_EQ(head, e.g.apply(inf));
            }
        }
    }
}

TEST(MinimalPaths, Census) {
    const auto count = [](Int p, Int q) {
        const Diagrams dg = build_diagrams(make_link(p, q));
        return minimal_paths(dg.dt, inf, Fraction(p, q)).size();
    };
    EXPECT_EQ(count(1, 2), 2u);
    EXPECT_EQ(count(3, 8), 5u);
    EXPECT_EQ(count(7, 16), 6u);
}

TEST(MinimalPaths, D1OverQ) {
    const Diagrams dg = build_diagrams(make_link(1, 2));
    const auto paths = minimal_paths(dg.d1, inf, Fraction(1, 2));
    ASSERT_EQ(paths.size(), 2u);
    std::set<std::vector<Fraction>> got;
    for (const auto& p : paths) got.insert(rational_vertices(p));
    const std::set<std::vector<Fraction>> expected{{inf, Fraction(1), Fraction(1, 2)}, {inf, Fraction(0), Fraction(1, 2)}};
    EXPECT_EQ(got, expected);
}

TEST(MinimalPaths, SurgeryFamilyPathsAreExactlyTheSixGammas) {
    for (Int k = 1; k <= 5; ++k) {
        const auto link = make_link(4 * k - 1, 8 * k);
        const Diagrams dg = build_diagrams(link);
        const auto paths = minimal_paths(dg.dt, inf, link.fraction());
        const auto gammas = surgery_gammas(dg.dt, k);
        EXPECT_EQ(paths.size(), gammas.size()) << k;
        for (const auto& g : gammas) EXPECT_TRUE(find_path(paths, g.vertices).has_value()) << g.name << " k=" << k;
    }
}

TEST(MinimalPaths, FourthGammaIsNotMinimalAtKOne) {
    const Diagrams dg = build_diagrams(make_link(3, 8));
    const Fraction t(3, 8);
    const std::vector<std::size_t> ids{
        dg.dt.vertex_id(inf),
        dg.dt.vertex_id(corner_on(dg.dt, inf, Fraction(0))),
        dg.dt.vertex_id(corner_on(dg.dt, Fraction(1, 2), Fraction(0))),
        dg.dt.vertex_id(Fraction(1, 2)),
        dg.dt.vertex_id(corner_on(dg.dt, Fraction(1, 2), Fraction(1, 3))),
        dg.dt.vertex_id(corner_on(dg.dt, Fraction(1, 3), t)),
        dg.dt.vertex_id(t),
    };
    TypedPath p{DiagramKind::dt, {}};
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) p.edges.push_back(dg.dt.traverse(ids[i], ids[i + 1]));
    EXPECT_FALSE(is_minimal(dg.dt, p));
}

TEST(MinimalPaths, DeterministicAndInsideChain) {
    for (const auto& link : enumerate_links(9, true)) {
        const Diagrams dg = build_diagrams(link);
        const auto chain = chain_vertices(dg.chain);
        for (const auto kind : {DiagramKind::d0, DiagramKind::d1, DiagramKind::dt}) {
            const auto a = minimal_paths(dg.get(kind), inf, link.fraction());
            const auto b = minimal_paths(build_diagrams(link).get(kind), inf, link.fraction());
            ASSERT_EQ(a.size(), b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                EXPECT_EQ(a[i].vertices(), b[i].vertices());
                EXPECT_TRUE(is_minimal(dg.get(kind), a[i]));
                EXPECT_EQ(a[i].from(), inf);
                EXPECT_EQ(a[i].to(), link.fraction());
                for (const auto& f : rational_vertices(a[i])) EXPECT_TRUE(chain.contains(f));
            }
        }
    }
}

TEST(MinimalPaths, ConsecutiveEdgesShareVertices) {
    const Diagrams dg = build_diagrams(make_link(13, 34));
    for (const auto& p : minimal_paths(dg.dt, inf, Fraction(13, 34))) {
        for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) EXPECT_EQ(p.edges[i].head, p.edges[i + 1].tail);
    }
}

TEST(Collapse, GammaFiveAndSixShareTheirLimit) {
    for (Int k = 1; k <= 4; ++k) {
        const auto link = make_link(4 * k - 1, 8 * k);
        const Diagrams dg = build_diagrams(link);
        const auto paths = minimal_paths(dg.dt, inf, link.fraction());
        const auto gammas = surgery_gammas(dg.dt, k);
        const auto g5 = find_path(paths, gammas[gammas.size() - 2].vertices);
        const auto g6 = find_path(paths, gammas.back().vertices);
        ASSERT_TRUE(g5 && g6);
        const TypedPath l5 = collapse(dg.dt, *g5, dg.d1);
        const TypedPath l6 = collapse(dg.dt, *g6, dg.d1);
        EXPECT_EQ(l5.vertices(), l6.vertices());
        EXPECT_EQ(l5.count(EdgeType::C), static_cast<std::size_t>(2 * k - 1));
    }
}

TEST(Collapse, GammaOneGivesSigmaOne) {
    for (Int k = 1; k <= 4; ++k) {
        const auto link = make_link(4 * k - 1, 8 * k);
        const Diagrams dg = build_diagrams(link);
        const auto g1 = find_path(minimal_paths(dg.dt, inf, link.fraction()), surgery_gammas(dg.dt, k)[0].vertices);
        ASSERT_TRUE(g1);
        const std::vector<Fraction> sigma1{inf, Fraction(1), Fraction(1, 2), Fraction(2 * k, 4 * k + 1), link.fraction()};
        EXPECT_EQ(rational_vertices(collapse(dg.dt, *g1, dg.d1)), sigma1);
    }
}

TEST(Collapse, LimitsAreMinimal) {
    for (const auto& link : enumerate_links(9, true)) {
        const Diagrams dg = build_diagrams(link);
        for (const auto& p : minimal_paths(dg.dt, inf, link.fraction())) {
            const TypedPath l1 = collapse(dg.dt, p, dg.d1);
            const TypedPath l0 = collapse(dg.dt, p, dg.d0);
            EXPECT_TRUE(is_minimal(dg.d1, l1)) << link.to_string();
            EXPECT_TRUE(is_minimal(dg.d0, l0)) << link.to_string();
            if (p.count(EdgeType::C) == 0 && p.count(EdgeType::D) == 0) {
                EXPECT_EQ(rational_vertices(l1), rational_vertices(p));
            }
        }
    }
}

TEST(Collapse, LimitsDetermineThePath) {
    for (const auto& link : enumerate_links(10, true)) {
        const Diagrams dg = build_diagrams(link);
        std::set<std::pair<std::vector<Fraction>, std::vector<Fraction>>> seen;
        const auto paths = minimal_paths(dg.dt, inf, link.fraction());
        for (const auto& p : paths) {
            seen.insert({rational_vertices(collapse(dg.dt, p, dg.d0)), rational_vertices(collapse(dg.dt, p, dg.d1))});
        }
        EXPECT_EQ(seen.size(), paths.size()) << link.to_string();
    }
}

TEST(Collapse, RejectsWrongInputs) {
    const Diagrams dg = build_diagrams(make_link(1, 2));
    const auto d1paths = minimal_paths(dg.d1, inf, Fraction(1, 2));
    EXPECT_THROW(collapse(dg.dt, d1paths[0], dg.d0), std::invalid_argument);
    const auto dtpaths = minimal_paths(dg.dt, inf, Fraction(1, 2));
    EXPECT_THROW(collapse(dg.dt, dtpaths[0], dg.dt), std::invalid_argument);
}
