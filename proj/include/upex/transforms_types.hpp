#pragma once

#include "upex/graph.hpp"

#include <vector>

namespace upex {

// (G, l, xi): levels are 1-based, xi lists the vertices of each level left
// to right. Structural invariants (l(u) < l(v) per edge) are checked by
// consumers, so reductions can surface violations as NO decisions.
struct OrderedLevelGraph {
    DirectedGraph graph;
    std::vector<int> level;                   // per vertex, >= 1
    std::vector<std::vector<VertexId>> xi;    // per level index 0..k-1

    bool levels_respect_edges() const {
        for (const Edge& e : graph.edges)
            if (!(level[e.tail] < level[e.head])) return false;
        return true;
    }
};

// Relates elements of a transformed instance back to the original one.
struct ElementMap {
    struct VertexOrigin {
        enum Kind { Original, OnEdge, SplitLow, SplitHigh } kind = Original;
        VertexId original_vertex = -1;  // for Original / SplitLow / SplitHigh
        int original_edge = -1;         // for OnEdge: index into original edges
        int segment_index = -1;         // for OnEdge: segment of the original route
    };
    std::vector<VertexOrigin> vertex_origin;  // per new vertex
    std::vector<int> edge_origin;             // per new edge: original edge index or -1
};

}  // namespace upex
