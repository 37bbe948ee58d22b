#include "upex/graph.hpp"

#include <algorithm>

namespace upex {

std::vector<VertexId> DirectedGraph::topological_order() const {
    std::vector<int> indeg(n, 0);
    for (const Edge& e : edges) indeg[e.head]++;
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<VertexId> ready;
    for (VertexId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    auto out = out_edges();
    while (!ready.empty()) {
        VertexId v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (int ei : out[v])
            if (--indeg[edges[ei].head] == 0) ready.push_back(edges[ei].head);
    }
    if ((int)order.size() != n) return {};
    return order;
}

bool DirectedGraph::is_acyclic() const { return (int)topological_order().size() == n || n == 0; }

std::vector<VertexId> DirectedGraph::sources() const {
    std::vector<bool> has_in(n, false);
    for (const Edge& e : edges) has_in[e.head] = true;
    std::vector<VertexId> res;
    for (VertexId v = 0; v < n; ++v)
        if (!has_in[v]) res.push_back(v);
    return res;
}

std::vector<VertexId> DirectedGraph::sinks() const {
    std::vector<bool> has_out(n, false);
    for (const Edge& e : edges) has_out[e.tail] = true;
    std::vector<VertexId> res;
    for (VertexId v = 0; v < n; ++v)
        if (!has_out[v]) res.push_back(v);
    return res;
}

bool UpwardEmbedding::consistent_with(const DirectedGraph& g) const {
    if ((int)succ.size() != g.n || (int)pred.size() != g.n) return false;
    std::vector<std::vector<VertexId>> out(g.n), in(g.n);
    for (const Edge& e : g.edges) {
        out[e.tail].push_back(e.head);
        in[e.head].push_back(e.tail);
    }
    for (VertexId v = 0; v < g.n; ++v) {
        auto match = [](std::vector<VertexId> a, std::vector<VertexId> b) {
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) return false;
            return std::adjacent_find(a.begin(), a.end()) == a.end();
        };
        if (!match(succ[v], out[v]) || !match(pred[v], in[v])) return false;
    }
    return true;
}

UpwardEmbedding UpwardEmbedding::flipped() const {
    UpwardEmbedding f = *this;
    for (auto& l : f.succ) std::reverse(l.begin(), l.end());
    for (auto& l : f.pred) std::reverse(l.begin(), l.end());
    return f;
}

}  // namespace upex
