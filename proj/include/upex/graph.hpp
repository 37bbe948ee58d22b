#pragma once

#include <cstdint>
#include <vector>

namespace upex {

using VertexId = int;

struct Edge {
    VertexId tail = -1;
    VertexId head = -1;

    bool operator==(const Edge& o) const { return tail == o.tail && head == o.head; }
    bool operator<(const Edge& o) const {
        return tail != o.tail ? tail < o.tail : head < o.head;
    }
};

// A directed graph over the dense vertex set 0..n-1. Instance graphs are
// simple; parallel edges appear only inside SPQR skeletons, which flag it.
struct DirectedGraph {
    int n = 0;
    std::vector<Edge> edges;
    bool allow_parallel = false;  // set only for skeleton graphs

    int edge_index(VertexId tail, VertexId head) const {
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].tail == tail && edges[i].head == head) return (int)i;
        return -1;
    }
    bool has_edge(VertexId tail, VertexId head) const { return edge_index(tail, head) >= 0; }

    // Edge indices, not neighbor ids; a vertex may repeat as neighbor only
    // in skeleton graphs.
    std::vector<std::vector<int>> out_edges() const {
        std::vector<std::vector<int>> out(n);
        for (size_t i = 0; i < edges.size(); ++i) out[edges[i].tail].push_back((int)i);
        return out;
    }
    std::vector<std::vector<int>> in_edges() const {
        std::vector<std::vector<int>> in(n);
        for (size_t i = 0; i < edges.size(); ++i) in[edges[i].head].push_back((int)i);
        return in;
    }

    bool is_acyclic() const;
    // Topological order; empty if cyclic.
    std::vector<VertexId> topological_order() const;

    std::vector<VertexId> sources() const;
    std::vector<VertexId> sinks() const;
};

// Per-vertex left-to-right successor and predecessor lists.
struct UpwardEmbedding {
    std::vector<std::vector<VertexId>> succ;
    std::vector<std::vector<VertexId>> pred;

    bool operator==(const UpwardEmbedding& o) const {
        return succ == o.succ && pred == o.pred;
    }

    // Structural consistency with g: every edge (u,v) appears exactly once
    // in succ[u] and once in pred[v], and nothing else appears.
    bool consistent_with(const DirectedGraph& g) const;

    // Mirror image: reverses every list.
    UpwardEmbedding flipped() const;
};

}  // namespace upex
