#include "upex/instance.hpp"

#include <algorithm>
#include <sstream>

namespace upex {

namespace {

std::string edge_name(const Edge& e) {
    std::ostringstream os;
    os << e.tail << "->" << e.head;
    return os.str();
}

// Intersection discipline shared by the H-drawing validator and the full
// verifier: two routes may meet only at a shared endpoint point.
bool routes_conflict(const Edge& e1, const Polyline& r1, const Edge& e2, const Polyline& r2,
                     std::string& why) {
    std::vector<Point> shared;
    if (e1.tail == e2.tail || e1.tail == e2.head) shared.push_back(r1.front());
    if (e1.head == e2.tail || e1.head == e2.head) shared.push_back(r1.back());
    for (size_t i = 1; i < r1.size(); ++i) {
        for (size_t j = 1; j < r2.size(); ++j) {
            auto res = segment_intersection(r1[i - 1], r1[i], r2[j - 1], r2[j]);
            if (res.kind == SegIntersection::None) continue;
            if (res.kind == SegIntersection::Overlap) {
                why = "routes " + edge_name(e1) + " and " + edge_name(e2) + " overlap";
                return true;
            }
            bool ok = false;
            for (const Point& s : shared)
                if (*res.point == s) ok = true;
            if (!ok) {
                why = "routes " + edge_name(e1) + " and " + edge_name(e2) +
                      " cross at a non-shared point";
                return true;
            }
        }
    }
    return false;
}

bool route_hits_vertex(const Edge& e, const Polyline& r, VertexId v, const Point& p) {
    if (v == e.tail || v == e.head) return false;
    for (size_t i = 1; i < r.size(); ++i)
        if (on_segment(r[i - 1], r[i], p)) return true;
    return false;
}

}  // namespace

ValidationReport validate_instance(const UpeInstance& inst) {
    const DirectedGraph& g = inst.graph;
    if (g.n < 0) return ValidationReport::fail("negative vertex count");
    for (const Edge& e : g.edges) {
        if (e.tail < 0 || e.tail >= g.n || e.head < 0 || e.head >= g.n)
            return ValidationReport::fail("edge endpoint out of range: " + edge_name(e));
        if (e.tail == e.head) return ValidationReport::fail("self-loop at " + std::to_string(e.tail));
    }
    for (size_t i = 0; i < g.edges.size(); ++i)
        for (size_t j = i + 1; j < g.edges.size(); ++j)
            if (g.edges[i] == g.edges[j])
                return ValidationReport::fail("parallel edge " + edge_name(g.edges[i]));

    for (VertexId v : inst.partial_vertices)
        if (v < 0 || v >= g.n)
            return ValidationReport::fail("H vertex not in G: " + std::to_string(v));
    for (const Edge& e : inst.partial_edges) {
        if (!g.has_edge(e.tail, e.head))
            return ValidationReport::fail("H edge not in G: " + edge_name(e));
        if (!inst.pinned(e.tail) || !inst.pinned(e.head))
            return ValidationReport::fail("H edge endpoint not in V(H): " + edge_name(e));
    }

    // Drawing domain must match H exactly.
    for (VertexId v : inst.partial_vertices)
        if (!inst.drawing.vertex_pos.count(v))
            return ValidationReport::fail("missing position for H vertex " + std::to_string(v));
    for (const auto& [v, p] : inst.drawing.vertex_pos)
        if (!inst.pinned(v))
            return ValidationReport::fail("position for non-H vertex " + std::to_string(v));
    for (const Edge& e : inst.partial_edges)
        if (!inst.drawing.edge_routes.count(e))
            return ValidationReport::fail("missing route for H edge " + edge_name(e));
    for (const auto& [e, r] : inst.drawing.edge_routes)
        if (!inst.pinned_edge(e))
            return ValidationReport::fail("route for non-H edge " + edge_name(e));

    // Distinct vertex points.
    for (auto it = inst.drawing.vertex_pos.begin(); it != inst.drawing.vertex_pos.end(); ++it)
        for (auto jt = std::next(it); jt != inst.drawing.vertex_pos.end(); ++jt)
            if (it->second == jt->second)
                return ValidationReport::fail("H vertices " + std::to_string(it->first) + " and " +
                                              std::to_string(jt->first) + " coincide");

    // Route shape: endpoints at vertex positions, strictly y-increasing.
    for (const auto& [e, r] : inst.drawing.edge_routes) {
        if (r.size() < 2) return ValidationReport::fail("degenerate route " + edge_name(e));
        if (r.front() != inst.pos(e.tail) || r.back() != inst.pos(e.head))
            return ValidationReport::fail("route endpoints mismatch vertex positions: " + edge_name(e));
        if (!strictly_y_increasing(r))
            return ValidationReport::fail("non-y-monotone polyline for edge " + edge_name(e));
    }

    // Planarity of Gamma_H with exact predicates, including vertices lying
    // in the interior of routes (rejected, see module notes).
    std::string why;
    for (auto it = inst.drawing.edge_routes.begin(); it != inst.drawing.edge_routes.end(); ++it)
        for (auto jt = std::next(it); jt != inst.drawing.edge_routes.end(); ++jt)
            if (routes_conflict(it->first, it->second, jt->first, jt->second, why))
                return ValidationReport::fail(why);
    for (const auto& [e, r] : inst.drawing.edge_routes)
        for (const auto& [v, p] : inst.drawing.vertex_pos)
            if (route_hits_vertex(e, r, v, p))
                return ValidationReport::fail("H vertex " + std::to_string(v) +
                                              " lies on route " + edge_name(e));

    if (inst.embedding && !inst.embedding->consistent_with(g))
        return ValidationReport::fail("embedding lists inconsistent with edge set");

    ValidationReport rep;
    rep.size = inst.size();
    return rep;
}

std::optional<UpwardEmbedding> extract_embedding(const DirectedGraph& g, const FullDrawing& d) {
    UpwardEmbedding emb;
    emb.succ.resize(g.n);
    emb.pred.resize(g.n);
    auto out = g.out_edges();
    auto in = g.in_edges();
    for (VertexId v = 0; v < g.n; ++v) {
        struct Item {
            Point dir;
            VertexId other;
        };
        auto sort_items = [](std::vector<Item>& items) -> bool {
            bool ok = true;
            std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
                int c = compare_tangents(a.dir, b.dir);
                if (c == 0) ok = false;
                return c < 0;
            });
            for (size_t i = 1; i + 0 < items.size() && ok; ++i)
                if (compare_tangents(items[i - 1].dir, items[i].dir) == 0) ok = false;
            return ok;
        };
        std::vector<Item> su, pr;
        for (int ei : out[v]) {
            const Polyline& r = d.edge_routes.at(g.edges[ei]);
            su.push_back({Point{r[1].x - r[0].x, r[1].y - r[0].y}, g.edges[ei].head});
        }
        for (int ei : in[v]) {
            const Polyline& r = d.edge_routes.at(g.edges[ei]);
            const Point& last = r[r.size() - 1];
            const Point& prev = r[r.size() - 2];
            pr.push_back({Point{prev.x - last.x, prev.y - last.y}, g.edges[ei].tail});
        }
        if (!sort_items(su) || !sort_items(pr)) return std::nullopt;
        for (const Item& it : su) emb.succ[v].push_back(it.other);
        for (const Item& it : pr) emb.pred[v].push_back(it.other);
    }
    return emb;
}

VerifyResult verify_drawing(const UpeInstance& inst, const FullDrawing& d) {
    const DirectedGraph& g = inst.graph;
    if ((int)d.vertex_pos.size() != g.n)
        return {VerifyStatus::Malformed, "drawing has wrong vertex count"};
    for (const Edge& e : g.edges)
        if (!d.edge_routes.count(e))
            return {VerifyStatus::Malformed, "missing route for edge " + edge_name(e)};
    for (const auto& [e, r] : d.edge_routes)
        if (!g.has_edge(e.tail, e.head))
            return {VerifyStatus::Malformed, "route for unknown edge " + edge_name(e)};

    // Extension of Gamma_H, bit-exact.
    for (VertexId v : inst.partial_vertices)
        if (d.vertex_pos[v] != inst.pos(v))
            return {VerifyStatus::Rejected, "pinned vertex " + std::to_string(v) + " moved"};
    for (const auto& [e, r] : inst.drawing.edge_routes)
        if (d.edge_routes.at(e) != r)
            return {VerifyStatus::Rejected, "pinned edge " + edge_name(e) + " re-routed"};

    // Simple drawing: distinct vertex points.
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v = u + 1; v < g.n; ++v)
            if (d.vertex_pos[u] == d.vertex_pos[v])
                return {VerifyStatus::Rejected,
                        "vertices " + std::to_string(u) + " and " + std::to_string(v) + " coincide"};

    // Upwardness and route endpoints.
    for (const auto& [e, r] : d.edge_routes) {
        if (r.size() < 2) return {VerifyStatus::Malformed, "degenerate route " + edge_name(e)};
        if (r.front() != d.vertex_pos[e.tail] || r.back() != d.vertex_pos[e.head])
            return {VerifyStatus::Rejected, "route endpoints mismatch: " + edge_name(e)};
        if (!strictly_y_increasing(r))
            return {VerifyStatus::Rejected, "edge " + edge_name(e) + " not upward"};
    }

    // Planarity.
    std::string why;
    for (auto it = d.edge_routes.begin(); it != d.edge_routes.end(); ++it)
        for (auto jt = std::next(it); jt != d.edge_routes.end(); ++jt)
            if (routes_conflict(it->first, it->second, jt->first, jt->second, why))
                return {VerifyStatus::Rejected, why};
    for (const auto& [e, r] : d.edge_routes)
        for (VertexId v = 0; v < g.n; ++v)
            if (route_hits_vertex(e, r, v, d.vertex_pos[v]))
                return {VerifyStatus::Rejected,
                        "vertex " + std::to_string(v) + " lies on route " + edge_name(e)};

    if (inst.embedding) {
        auto got = extract_embedding(g, d);
        if (!got)
            return {VerifyStatus::Rejected, "collinear first segments make rotation order ambiguous"};
        if (!(*got == *inst.embedding))
            return {VerifyStatus::Rejected, "drawing does not realize the prescribed embedding"};
    }
    return {VerifyStatus::Accepted, ""};
}

}  // namespace upex
