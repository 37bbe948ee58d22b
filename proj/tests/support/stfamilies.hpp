#pragma once

#include "upex/oracle.hpp"
#include "upex/stgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace upex::testsupport {

// All simple series-parallel st-graphs on exactly n vertices, s=0 t=n-1,
// deduplicated up to relabeling. Parallel composition admits a single-edge
// branch, so closing-edge variants arise naturally.
inline std::vector<std::vector<Edge>> sp_st_graphs(int n) {
    static std::map<int, std::vector<std::vector<Edge>>> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    auto canonical = [](const std::vector<Edge>& edges, int nv) {
        std::vector<int> perm(nv);
        for (int i = 0; i < nv; ++i) perm[i] = i;
        std::vector<Edge> best;
        do {
            std::vector<Edge> cur;
            for (const Edge& e : edges) cur.push_back({perm[e.tail], perm[e.head]});
            std::sort(cur.begin(), cur.end());
            if (best.empty() || cur < best) best = cur;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    };

    std::vector<std::vector<Edge>> out;
    std::set<std::vector<Edge>> seen;
    auto add = [&](const std::vector<Edge>& edges) {
        if (seen.insert(canonical(edges, n)).second) out.push_back(edges);
    };

    if (n == 2) {
        add({{0, 1}});
    } else if (n > 2) {
        // Series: G1 on k vertices (poles 0, k-1) followed by G2 shifted.
        for (int k = 2; k < n; ++k) {
            for (const auto& g1 : sp_st_graphs(k)) {
                for (const auto& g2 : sp_st_graphs(n - k + 1)) {
                    std::vector<Edge> edges = g1;
                    for (const Edge& e : g2) edges.push_back({e.tail + k - 1, e.head + k - 1});
                    add(edges);
                }
            }
        }
        // Parallel of two proper parts (each with an inner vertex).
        for (int k = 3; k <= n - 1; ++k) {
            for (const auto& g1 : sp_st_graphs(k)) {
                for (const auto& g2 : sp_st_graphs(n - k + 2)) {
                    auto map1 = [&](int v) { return v == k - 1 ? n - 1 : v; };
                    auto map2 = [&](int v) {
                        if (v == 0) return 0;
                        int m2 = n - k + 2;
                        if (v == m2 - 1) return n - 1;
                        return v + k - 2;
                    };
                    std::vector<Edge> edges;
                    std::set<Edge> dedup;
                    bool simple = true;
                    for (const Edge& e : g1) edges.push_back({map1(e.tail), map1(e.head)});
                    for (const Edge& e : g2) edges.push_back({map2(e.tail), map2(e.head)});
                    for (const Edge& e : edges)
                        if (!dedup.insert(e).second) simple = false;
                    if (simple) add(edges);
                }
            }
        }
        // Parallel with a single edge: the closing-edge variants.
        std::vector<std::vector<Edge>> open = out;
        for (const auto& g : open) {
            if (std::find(g.begin(), g.end(), Edge{0, n - 1}) != g.end()) continue;
            std::vector<Edge> closed = g;
            closed.push_back({0, n - 1});
            add(closed);
        }
    }
    memo[n] = out;
    return out;
}

// Brute-force S/P/L/R ground truth from the definitions: reachability for
// S/P, geometric side of the leftmost in/out path for L/R, evaluated in a
// verifier-accepted drawing of the embedded graph.
struct RelationOracle {
    const DirectedGraph& g;
    const UpwardEmbedding& emb;
    FullDrawing d;
    std::vector<std::vector<bool>> reach;

    RelationOracle(const DirectedGraph& g_, const UpwardEmbedding& emb_) : g(g_), emb(emb_) {
        UpeInstance inst;
        inst.graph = g;
        inst.embedding = emb;
        auto res = brute_force_decide(inst, {8, true});
        if (res.decision != Decision::Yes) throw std::runtime_error("embedding not drawable");
        d = *res.witness;
        reach.assign(g.n, std::vector<bool>(g.n, false));
        for (const Edge& e : g.edges) reach[e.tail][e.head] = true;
        for (int k = 0; k < g.n; ++k)
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    }

    // x-coordinate of the leftmost monotone path through v at height y.
    Rat path_x_at(VertexId v, const Rat& y) const {
        // Walk down leftmost incoming, up leftmost outgoing.
        std::vector<VertexId> chain{v};
        while (!emb.pred[chain.back()].empty()) chain.push_back(emb.pred[chain.back()].front());
        std::reverse(chain.begin(), chain.end());
        while (!emb.succ[chain.back()].empty()) chain.push_back(emb.succ[chain.back()].front());
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            const Polyline& r = d.edge_routes.at({chain[i], chain[i + 1]});
            if (r.front().y <= y && y <= r.back().y) return polyline_x_at(r, y);
        }
        // Beyond the path's span: the vertical extensions.
        if (y < d.vertex_pos[chain.front()].y) return d.vertex_pos[chain.front()].x;
        return d.vertex_pos[chain.back()].x;
    }

    Relation relation(VertexId u, VertexId v) const {
        if (reach[u][v]) return Relation::Successor;
        if (reach[v][u]) return Relation::Predecessor;
        // v relative to u: which side of the leftmost path through u?
        // Left-of uses the leftmost paths, right-of the rightmost ones; for
        // incomparable vertices they agree on the side.
        Rat px = path_x_at(u, d.vertex_pos[v].y);
        return d.vertex_pos[v].x < px ? Relation::Left : Relation::Right;
    }
};

}  // namespace upex::testsupport
