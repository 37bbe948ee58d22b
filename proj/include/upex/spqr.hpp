#pragma once

#include "upex/stgraph.hpp"

namespace upex {

// Rooted SPQR decomposition of an st-graph with the reference edge (s,t)
// added when missing. The root is the node the reference Q-node hangs off.
struct SpqrTree {
    enum Kind { S, P, Q, R };

    struct SkelEdge {
        VertexId tail, head;  // global vertex ids
        int child;            // child node index; -1 real edge, -2 parent virtual edge
    };

    struct Node {
        Kind kind;
        VertexId pole_s, pole_t;
        std::vector<SkelEdge> skel_edges;
        std::vector<VertexId> skel_vertices;
        int parent = -1;
        std::vector<int> children;
        std::vector<bool> in_pertinent;  // per global vertex
        Edge q_edge{-1, -1};             // Q-nodes only
        int depth = 0;
    };

    std::vector<Node> nodes;
    int root = -1;
    bool added_ref_edge = false;
    int ref_q_node = -1;
    VertexId s = -1, t = -1;
    int graph_n = 0;

    std::vector<int> proper_alloc;  // per vertex

    int lca(int a, int b) const;

    // Representative of vertex v in the skeleton of node nu: the vertex
    // itself, or the index (into skel_edges) of the child edge whose
    // pertinent graph holds v.
    struct Representative {
        bool is_vertex;
        VertexId v = -1;
        int skel_edge = -1;
    };
    Representative representative(int nu, VertexId v) const;

  private:
    friend SpqrTree build_spqr_tree(const StGraph& g);
    std::vector<int> euler_first;
    std::vector<int> euler_depth_seq;
    std::vector<int> euler_node_seq;
    std::vector<std::vector<int>> sparse;
    void build_queries();
};

SpqrTree build_spqr_tree(const StGraph& g);

// One embedding choice: an order of the children per P-node and a flip per
// R-node. Missing entries mean defaults.
struct EmbeddingChoice {
    std::map<int, std::vector<int>> p_order;  // node -> child skeleton-edge order
    std::map<int, bool> r_flip;
};

// Assembles the upward embedding of the original graph (reference edge
// stripped when it was added) for a choice vector.
UpwardEmbedding assemble_embedding(const SpqrTree& tree, const EmbeddingChoice& choice);

// Upward embedding of an R-node skeleton (one of the two), as rotation
// lists over skeleton edge indices.
struct SkeletonEmbedding {
    std::vector<std::vector<int>> out_edges;  // per skeleton-local vertex
    std::vector<std::vector<int>> in_edges;
    std::vector<VertexId> local_to_global;
    std::vector<int> global_to_local;  // -1 when absent
};

SkeletonEmbedding r_node_skeleton_embedding(const SpqrTree& tree, int nu);

// L/R/S/P queries between representatives inside an R-node skeleton, with
// a dummy vertex on every child edge.
struct SkeletonIndex {
    SkeletonEmbedding emb;
    DominanceIndex dom;
    std::vector<int> edge_dummy;  // per skeleton edge: local dummy vertex id, -1 for parent edge

    Relation relation(const SpqrTree::Representative& a, const SpqrTree::Representative& b) const;
};

SkeletonIndex build_skeleton_index(const SpqrTree& tree, int nu);

}  // namespace upex
