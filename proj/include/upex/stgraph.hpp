#pragma once

#include "upex/oracle.hpp"

#include <memory>

namespace upex {

struct StGraph {
    DirectedGraph graph;
    VertexId s = -1;
    VertexId t = -1;
};

// Requires a DAG with a unique source and a unique sink. Does not test
// upward planarity; solvers check what they need (planar rotation for the
// fixed-embedding path, planarity of G+(s,t) for the variable one).
StGraph make_st_graph(const DirectedGraph& g);
bool is_st_graph(const DirectedGraph& g);

// Faces of an embedded upward planar st-graph. Boundaries run bottom to
// top, bottom/top vertices included in both.
struct Face {
    std::vector<VertexId> left;
    std::vector<VertexId> right;
    VertexId bottom() const { return left.front(); }
    VertexId top() const { return left.back(); }
};

struct FaceSet {
    std::vector<Face> faces;
    int outer = -1;
};

// Traces the rotation system derived from the embedding. Throws when the
// rotation is not planar (Euler check) or a face boundary is not a pair of
// monotone paths.
FaceSet compute_faces(const DirectedGraph& g, const UpwardEmbedding& emb);

// Removes all transitive edges by the face criterion: an edge is
// transitive iff the rest of one of its face boundaries is a monotone path
// between its endpoints.
std::pair<StGraph, UpwardEmbedding> transitive_reduction(const StGraph& g,
                                                         const UpwardEmbedding& emb);

enum class Relation { Successor, Predecessor, Left, Right };

// Constant-time S/P/L/R queries from a dominance numbering of the
// transitive reduction.
struct DominanceIndex {
    std::vector<int> dom_x, dom_y;

    // Position of v relative to u.
    Relation relation(VertexId u, VertexId v) const {
        bool px = dom_x[u] < dom_x[v];
        bool py = dom_y[u] < dom_y[v];
        if (px && py) return Relation::Successor;
        if (!px && !py) return Relation::Predecessor;
        if (px) return Relation::Right;  // x greater, y smaller
        return Relation::Left;
    }
};

DominanceIndex build_dominance_index(const StGraph& g, const UpwardEmbedding& emb);

// The two per-vertex conditions characterizing fixed-embedding
// extension with edgeless H: height order respects reachability, and
// equal-height pins sit left of each other in the embedding.
bool check_condition1(const UpeInstance& inst);
bool check_condition2_fixed(const UpeInstance& inst, const DominanceIndex& idx);

// UPE-FUE for upward planar st-graphs with a prescribed embedding; H-edges
// are eliminated internally.
Decision solve_st_fue(const UpeInstance& inst);

// Constructive witness for a YES instance of solve_st_fue: augments the
// unpinned vertices, lays the leftmost path, peels faces left to right,
// and realizes the resulting line orders with exact coordinates.
FullDrawing build_witness_drawing_st(const UpeInstance& inst);

struct StUpeResult {
    Decision decision = Decision::No;
    std::optional<UpwardEmbedding> embedding;  // on YES
};

// UPE for upward planar st-graphs without a prescribed embedding, via the
// SPQR tree: per-P-node order constraints and per-R-node flips.
StUpeResult solve_st_upe(const UpeInstance& inst);

// All upward embeddings of an st-graph, assembled from the SPQR tree by
// permuting P-node children and flipping R-node skeletons. Desk-scale:
// intended for exhaustive testing.
std::vector<UpwardEmbedding> enumerate_upward_embeddings(const StGraph& g, size_t limit = 100000);

}  // namespace upex
