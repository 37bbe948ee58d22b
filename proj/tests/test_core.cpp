#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/builders.hpp"
#include "upex/instance.hpp"
#include "upex/jsonio.hpp"

using namespace upex;
using namespace upex::testsupport;

TEST_CASE("validate: straight pinned edge, size = |V|+|E|+s") {
    auto inst = InstanceBuilder(2).edge(0, 1).pin(0, 0, 0).pin(1, pt(0, 1)).build();
    auto rep = validate_instance(inst);
    CHECK(rep.ok);
    CHECK(rep.size == 3);  // 2 vertices + 1 edge + 0 segments (H has no edges)
}

TEST_CASE("validate: non-y-monotone route is rejected") {
    auto inst = InstanceBuilder(2)
                    .edge(0, 1)
                    .pin(0, 0, 0)
                    .pin(1, pt(0, 1))
                    .pin_edge(0, 1, {pt(0, 0), pt(0, -1), pt(0, 1)})
                    .build();
    auto rep = validate_instance(inst);
    CHECK_FALSE(rep.ok);
    CHECK(rep.error.find("monotone") != std::string::npos);
}

TEST_CASE("validate: H vertex outside G is rejected") {
    auto inst = InstanceBuilder(2).edge(0, 1).pin(5, pt(0, 0)).build();
    CHECK_FALSE(validate_instance(inst).ok);
}

TEST_CASE("validate: crossing pinned routes are rejected") {
    auto inst = InstanceBuilder(4)
                    .edge(0, 1)
                    .edge(2, 3)
                    .pin(0, 0, 0)
                    .pin(1, 1, 1)
                    .pin(2, 1, 0)
                    .pin(3, 0, 1)
                    .pin_edge(0, 1)
                    .pin_edge(2, 3)
                    .build();
    CHECK_FALSE(validate_instance(inst).ok);
}

namespace {

FullDrawing straight_line_drawing(const DirectedGraph& g, std::vector<Point> pos) {
    FullDrawing d;
    d.vertex_pos = std::move(pos);
    for (const Edge& e : g.edges) d.edge_routes[e] = {d.vertex_pos[e.tail], d.vertex_pos[e.head]};
    return d;
}

}  // namespace

TEST_CASE("verify: upward straight-line diamond accepted") {
    auto inst = diamond().build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-1, 1), pt(1, 1), pt(0, 2)});
    CHECK(verify_drawing(inst, d).accepted());
}

TEST_CASE("verify: sink below its predecessors rejected") {
    auto inst = diamond().build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-1, 1), pt(1, 1), pt(0, -1)});
    auto r = verify_drawing(inst, d);
    CHECK(r.status == VerifyStatus::Rejected);
}

TEST_CASE("verify: crossing straight edges rejected") {
    UpeInstance inst = InstanceBuilder(4).edge(0, 1).edge(2, 3).build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)});
    CHECK(verify_drawing(inst, d).status == VerifyStatus::Rejected);
}

TEST_CASE("verify: missing edge route is malformed, not false") {
    auto inst = InstanceBuilder(2).edge(0, 1).build();
    FullDrawing d;
    d.vertex_pos = {pt(0, 0), pt(0, 1)};
    CHECK(verify_drawing(inst, d).status == VerifyStatus::Malformed);
}

TEST_CASE("verify: acceptance is invariant under uniform positive scaling") {
    auto inst = diamond().embed(diamond_embedding_ab().succ, diamond_embedding_ab().pred).build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-1, 1), pt(1, 1), pt(0, 2)});
    REQUIRE(verify_drawing(inst, d).accepted());
    for (Rat s : {rat(3), rat(1, 7), rat(22, 3)}) {
        FullDrawing ds = d;
        for (Point& p : ds.vertex_pos) {
            p.x *= s;
            p.y *= s;
        }
        for (auto& [e, r] : ds.edge_routes)
            for (Point& p : r) {
                p.x *= s;
                p.y *= s;
            }
        CHECK(verify_drawing(inst, ds).accepted());
    }
}

TEST_CASE("verify: embedding mismatch rejected, match accepted, extraction round-trips") {
    auto emb = diamond_embedding_ab();
    auto inst = diamond().embed(emb.succ, emb.pred).build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-1, 1), pt(1, 1), pt(0, 2)});
    CHECK(verify_drawing(inst, d).accepted());
    auto extracted = extract_embedding(inst.graph, d);
    REQUIRE(extracted.has_value());
    CHECK(*extracted == emb);

    auto flipped = emb.flipped();
    auto inst2 = diamond().embed(flipped.succ, flipped.pred).build();
    CHECK(verify_drawing(inst2, d).status == VerifyStatus::Rejected);
}

TEST_CASE("verify: pinned elements must match bit-exactly") {
    auto inst = diamond().pin(1, pt(-1, 1)).build();
    auto d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-2, 1), pt(1, 1), pt(0, 2)});
    CHECK(verify_drawing(inst, d).status == VerifyStatus::Rejected);
    d = straight_line_drawing(inst.graph, {pt(0, 0), pt(-1, 1), pt(1, 1), pt(0, 2)});
    CHECK(verify_drawing(inst, d).accepted());
}

TEST_CASE("json: instance round-trip is exact") {
    auto inst = InstanceBuilder(3)
                    .edge(0, 1)
                    .edge(1, 2)
                    .pin(0, pt(1, 3, -2, 7))
                    .pin(1, pt(0, 1, 1, 1))
                    .pin_edge(0, 1, {pt(1, 3, -2, 7), pt(1, 2, 1, 3), pt(0, 1, 1, 1)})
                    .embed({{1}, {2}, {}}, {{}, {0}, {1}})
                    .build();
    Json j = instance_to_json(inst);
    UpeInstance back = instance_from_json(j);
    CHECK(back.graph.edges == inst.graph.edges);
    CHECK(back.partial_vertices == inst.partial_vertices);
    CHECK(back.partial_edges == inst.partial_edges);
    CHECK(back.drawing.vertex_pos == inst.drawing.vertex_pos);
    CHECK(back.drawing.edge_routes == inst.drawing.edge_routes);
    REQUIRE(back.embedding.has_value());
    CHECK(*back.embedding == *inst.embedding);
}

TEST_CASE("geometry: exact segment intersection classification") {
    CHECK(segment_intersection(pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)).kind ==
          SegIntersection::Point);
    auto r = segment_intersection(pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1));
    CHECK(*r.point == pt(1, 2, 1, 2));
    CHECK(segment_intersection(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)).kind ==
          SegIntersection::None);
    CHECK(segment_intersection(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)).kind ==
          SegIntersection::Overlap);
    CHECK(segment_intersection(pt(0, 0), pt(1, 0), pt(1, 0), pt(2, 5)).kind ==
          SegIntersection::Point);
}
