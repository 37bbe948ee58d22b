#pragma once

#include "upex/geometry.hpp"
#include "upex/graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace upex {

// Fixed drawing of the partial graph H. Vertex positions cover exactly
// V(H); edge routes cover exactly E(H).
struct PartialDrawing {
    std::map<VertexId, Point> vertex_pos;
    std::map<Edge, Polyline> edge_routes;
};

// The triple <G, H, Gamma_H>, plus an optional prescribed upward embedding
// (present on UPE-FUE instances).
struct UpeInstance {
    DirectedGraph graph;
    std::set<VertexId> partial_vertices;
    std::set<Edge> partial_edges;
    PartialDrawing drawing;
    std::optional<UpwardEmbedding> embedding;

    bool pinned(VertexId v) const { return partial_vertices.count(v) > 0; }
    bool pinned_edge(const Edge& e) const { return partial_edges.count(e) > 0; }
    const Point& pos(VertexId v) const { return drawing.vertex_pos.at(v); }

    // Number of polyline segments over all H-edge routes.
    long segment_count() const {
        long s = 0;
        for (const auto& [e, pl] : drawing.edge_routes) s += (long)pl.size() - 1;
        return s;
    }
    // |<G,H,Gamma_H>| = |V(G)| + |E(G)| + s
    long size() const { return graph.n + (long)graph.edges.size() + segment_count(); }
};

struct FullDrawing {
    std::vector<Point> vertex_pos;        // total over V(G)
    std::map<Edge, Polyline> edge_routes;  // total over E(G)
};

struct ValidationReport {
    bool ok = true;
    std::string error;     // first violated invariant, empty when ok
    long size = 0;         // instance size, reported when ok

    static ValidationReport fail(std::string msg) { return {false, std::move(msg), 0}; }
};

ValidationReport validate_instance(const UpeInstance& inst);

enum class VerifyStatus { Accepted, Rejected, Malformed };

struct VerifyResult {
    VerifyStatus status = VerifyStatus::Rejected;
    std::string reason;

    bool accepted() const { return status == VerifyStatus::Accepted; }
};

// Checks that d is an upward planar drawing of G extending Gamma_H
// bit-exactly, and (when the instance carries one) that the geometric
// tangent orders at every vertex realize the prescribed embedding.
// Missing vertices/edges yield Malformed, which is distinct from a
// geometric rejection.
VerifyResult verify_drawing(const UpeInstance& inst, const FullDrawing& d);

// Tangent-order extraction: the S/P lists realized by a drawing. Fails
// (nullopt) when two first segments at a vertex are collinear.
std::optional<UpwardEmbedding> extract_embedding(const DirectedGraph& g, const FullDrawing& d);

}  // namespace upex
