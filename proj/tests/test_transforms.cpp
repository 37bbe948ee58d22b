#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/builders.hpp"
#include "upex/oracle.hpp"
#include "upex/transforms.hpp"

#include <random>

using namespace upex;
using namespace upex::testsupport;

TEST_CASE("eliminate: edgeless H is the identity") {
    auto inst = diamond().pin(0, pt(0, 0)).pin(3, pt(0, 9)).build();
    auto [out, map] = eliminate_partial_edges(inst);
    CHECK(out.graph.edges == inst.graph.edges);
    CHECK(out.partial_vertices == inst.partial_vertices);
}

TEST_CASE("eliminate: a bend becomes a pinned path vertex") {
    auto inst = InstanceBuilder(2)
                    .edge(0, 1)
                    .pin(0, pt(0, 0))
                    .pin(1, pt(0, 2))
                    .pin_edge(0, 1, {pt(0, 0), pt(1, 1), pt(0, 2)})
                    .build();
    REQUIRE(validate_instance(inst).ok);
    auto [out, map] = eliminate_partial_edges(inst);
    CHECK(out.graph.n == 3);
    CHECK(out.partial_edges.empty());
    CHECK(out.drawing.edge_routes.empty());
    VertexId d = 2;
    CHECK(out.pos(d) == pt(1, 1));
    CHECK(out.graph.has_edge(0, d));
    CHECK(out.graph.has_edge(d, 1));
    CHECK(out.partial_vertices.count(d) == 1);
    CHECK(map.vertex_origin[d].kind == ElementMap::VertexOrigin::OnEdge);
    CHECK(map.vertex_origin[d].original_edge == 0);
}

TEST_CASE("eliminate: single crossing vertex when cases (i) and (ii) coincide") {
    auto inst = InstanceBuilder(3)
                    .edge(0, 1)
                    .pin(0, pt(0, 0))
                    .pin(1, pt(0, 3))
                    .pin(2, pt(5, 1, 3, 2))  // w at (5, 3/2)
                    .pin_edge(0, 1)
                    .build();
    REQUIRE(validate_instance(inst).ok);
    auto [out, map] = eliminate_partial_edges(inst);
    CHECK(out.graph.n == 4);  // exactly one subdivision vertex
    VertexId d = 3;
    CHECK(out.pos(d) == pt(0, 1, 3, 2));
    CHECK(out.graph.has_edge(0, d));
    CHECK(out.graph.has_edge(d, 1));
    CHECK(out.partial_edges.empty());
}

TEST_CASE("eliminate: incremental and quadratic sweeps agree") {
    std::mt19937_64 rng(123);
    for (int it = 0; it < 60; ++it) {
        // Random small instance with pinned straight edges.
        int n = 3 + (int)(rng() % 4);
        InstanceBuilder b(n);
        std::uniform_int_distribution<int> coord(0, 6);
        std::vector<Point> pos(n);
        std::set<std::pair<long, long>> used;
        for (int v = 0; v < n; ++v) {
            long x, y;
            do {
                x = coord(rng);
                y = coord(rng);
            } while (used.count({x, y}));
            used.insert({x, y});
            pos[v] = pt(x, y);
            b.pin(v, pos[v]);
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v || !(pos[u].y < pos[v].y) || rng() % 3) continue;
                b.edge(u, v).pin_edge(u, v);
            }
        auto inst = b.build();
        if (!validate_instance(inst).ok) continue;
        auto fast = eliminate_partial_edges(inst, false);
        auto slow = eliminate_partial_edges(inst, true);
        CHECK(fast.instance.graph.edges == slow.instance.graph.edges);
        CHECK(fast.instance.drawing.vertex_pos == slow.instance.drawing.vertex_pos);
    }
}

TEST_CASE("eliminate: structural postconditions on random valid instances") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int it = 0; it < 300 && checked < 60; ++it) {
        int n = 2 + (int)(rng() % 4);
        InstanceBuilder b(n);
        std::uniform_int_distribution<int> coord(0, 5);
        std::vector<Point> pos(n);
        std::set<std::pair<long, long>> used;
        for (int v = 0; v < n; ++v) {
            long x, y;
            do {
                x = coord(rng);
                y = coord(rng);
            } while (used.count({x, y}));
            used.insert({x, y});
            pos[v] = pt(x, y);
            b.pin(v, pos[v]);
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && pos[u].y < pos[v].y && rng() % 4 == 0) b.edge(u, v).pin_edge(u, v);
        auto inst = b.build();
        if (!validate_instance(inst).ok) continue;
        ++checked;
        auto [out, map] = eliminate_partial_edges(inst);
        CHECK(out.partial_edges.empty());                            // property (i)
        CHECK((int)out.partial_vertices.size() == out.graph.n);      // property (ii), V(H)=V(G)
        CHECK(validate_instance(out).ok);
        CHECK(out.size() <= 8 * inst.size());
    }
    CHECK(checked >= 30);
}

TEST_CASE("distinct-y: already distinct stays untouched") {
    auto inst = diamond().pin(0, pt(0, 0)).pin(3, pt(1, 7)).build();
    auto [out, map] = make_distinct_y(inst);
    CHECK(out.graph.edges == inst.graph.edges);
    CHECK(out.drawing.vertex_pos == inst.drawing.vertex_pos);
}

TEST_CASE("distinct-y: split segment lengths follow j*h/(3K)") {
    // p and q share a line; r above fixes the strip height at 3/5.
    auto inst = InstanceBuilder(3)
                    .pin(0, pt(1, 5))
                    .pin(1, pt(2, 5))
                    .pin(2, pt(0, 1, 31, 5))
                    .build();
    REQUIRE(validate_instance(inst).ok);
    auto [out, map] = make_distinct_y(inst);
    // p splits at 5 -/+ 1/20, q at 5 -/+ 1/10.
    std::set<Point> want = {pt(1, 1, 99, 20), pt(1, 1, 101, 20), pt(2, 1, 49, 10),
                            pt(2, 1, 51, 10)};
    int hits = 0;
    for (const auto& [v, p] : out.drawing.vertex_pos)
        if (want.count(p)) ++hits;
    CHECK(hits == 4);
    // No two H' vertices share a y-coordinate.
    std::set<Rat> ys;
    for (const auto& [v, p] : out.drawing.vertex_pos) CHECK(ys.insert(p.y).second);
    CHECK(validate_instance(out).ok);
}

TEST_CASE("distinct-y: keeps V(H)=V(G)") {
    auto inst = InstanceBuilder(3).edge(0, 1).pin(0, pt(0, 0)).pin(1, pt(3, 0)).pin(2, pt(1, 1)).build();
    auto [out, map] = make_distinct_y(inst);
    CHECK((int)out.partial_vertices.size() == out.graph.n);
    CHECK(validate_instance(out).ok);
}

TEST_CASE("olp: reduction examples and round-trip") {
    auto inst = InstanceBuilder(3)
                    .edge(0, 2)
                    .pin(0, pt(3, 1, 1, 2))
                    .pin(1, pt(1, 1, 1, 2))
                    .pin(2, pt(0, 2))
                    .build();
    auto olg = upe_to_olp(inst);
    CHECK(olg.level == std::vector<int>{1, 1, 2});
    CHECK(olg.xi[0] == std::vector<VertexId>{1, 0});  // x order 1 then 3
    CHECK(olg.xi[1] == std::vector<VertexId>{2});

    auto back = olp_to_upe(olg);
    CHECK(back.pos(1) == pt(1, 1));
    CHECK(back.pos(0) == pt(2, 1));
    CHECK(back.pos(2) == pt(1, 2));
    // Round-trip preserves level partition and within-level order.
    auto olg2 = upe_to_olp(back);
    CHECK(olg2.level == olg.level);
    CHECK(olg2.xi == olg.xi);
}

TEST_CASE("olp: single vertex and rejections") {
    auto one = InstanceBuilder(1).pin(0, pt(4, 4)).build();
    auto olg = upe_to_olp(one);
    CHECK(olg.level == std::vector<int>{1});
    CHECK(olg.xi[0] == std::vector<VertexId>{0});

    auto unpinned = InstanceBuilder(2).edge(0, 1).pin(0, pt(0, 0)).build();
    CHECK_THROWS(upe_to_olp(unpinned));
}

TEST_CASE("transforms: oracle decision survives both simplifications") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 40; ++it) {
        int n = 2 + (int)(rng() % 4);
        InstanceBuilder b(n);
        std::uniform_int_distribution<int> coord(0, 5);
        std::vector<Point> pos(n);
        std::set<std::pair<long, long>> used;
        for (int v = 0; v < n; ++v) {
            long x, y;
            do {
                x = coord(rng);
                y = coord(rng);
            } while (used.count({x, y}));
            used.insert({x, y});
            pos[v] = pt(x, y);
        }
        // G random DAG by index order; H pins a subset, H-edges a subset of
        // the position-compatible edges.
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 3 == 0) b.edge(u, v);
        auto& inst0 = b.inst;
        for (int v = 0; v < n; ++v)
            if (rng() % 3) b.pin(v, pos[v]);
        for (const Edge& e : inst0.graph.edges)
            if (inst0.pinned(e.tail) && inst0.pinned(e.head) && pos[e.tail].y < pos[e.head].y &&
                rng() % 2)
                b.pin_edge(e.tail, e.head);
        auto inst = b.build();
        if (!validate_instance(inst).ok) continue;
        ++checked;
        auto base = brute_force_decide(inst).decision;
        auto el = eliminate_partial_edges(inst);
        REQUIRE(validate_instance(el.instance).ok);
        CHECK(brute_force_decide(el.instance, {10, true}).decision == base);
        auto dy = make_distinct_y(inst);
        REQUIRE(validate_instance(dy.instance).ok);
        CHECK(brute_force_decide(dy.instance, {14, true}).decision == base);
        CHECK(dy.instance.size() <= 8 * inst.size());
    }
    CHECK(checked >= 20);
}
