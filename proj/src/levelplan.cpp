#include "upex/levelplan.hpp"

#include "upex/transforms.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace upex {

std::optional<LevelGraphSingleton> as_singleton_levels(const OrderedLevelGraph& olg) {
    LevelGraphSingleton lg;
    lg.graph = olg.graph;
    for (const auto& lv : olg.xi) {
        if (lv.size() != 1) return std::nullopt;
        lg.by_level.push_back(lv.front());
    }
    if ((int)lg.by_level.size() != olg.graph.n) return std::nullopt;
    return lg;
}

namespace {

// Sweep state: the open edges crossing the gap above the current level,
// left to right. Processing a vertex contracts its consecutive incoming
// run and inserts its outgoing edges as a block; the insertion point and
// the block's internal order are the branching choices.
struct Sweep {
    const DirectedGraph& g;
    std::vector<std::vector<int>> out, in;
    // Open-edge sequences already explored per level.
    std::vector<std::set<std::vector<int>>> seen;

    bool run(const std::vector<VertexId>& by_level) {
        seen.assign(by_level.size() + 1, {});
        std::vector<int> open;  // edge indices
        return step(0, by_level, open);
    }

    bool step(size_t li, const std::vector<VertexId>& by_level, std::vector<int>& open) {
        if (!seen[li].insert(open).second) return false;
        if (li == by_level.size()) return open.empty();
        VertexId v = by_level[li];

        // Locate v's incoming edges in the open sequence.
        size_t first = open.size(), last = 0;
        size_t found = 0;
        for (size_t p = 0; p < open.size(); ++p) {
            if (g.edges[open[p]].head == v) {
                first = std::min(first, p);
                last = p;
                ++found;
            }
        }
        if (found != in[v].size()) return false;  // an incoming edge was never opened
        if (found > 0 && last - first + 1 != found) return false;  // not consecutive

        size_t pos_lo = found > 0 ? first : 0;
        size_t pos_hi = found > 0 ? first : open.size();

        std::vector<int> outs(out[v]);
        std::sort(outs.begin(), outs.end());
        do {
            for (size_t at = pos_lo; at <= pos_hi; ++at) {
                std::vector<int> next;
                next.reserve(open.size() - found + outs.size());
                next.insert(next.end(), open.begin(), open.begin() + (found ? first : at));
                if (!found) {
                    next.insert(next.end(), outs.begin(), outs.end());
                    next.insert(next.end(), open.begin() + at, open.end());
                } else {
                    next.insert(next.end(), outs.begin(), outs.end());
                    next.insert(next.end(), open.begin() + last + 1, open.end());
                }
                if (step(li + 1, by_level, next)) return true;
                if (found) break;  // insertion point fixed by the incoming run
            }
        } while (std::next_permutation(outs.begin(), outs.end()));
        return false;
    }
};

}  // namespace

Decision is_level_planar_singleton(const LevelGraphSingleton& lg) {
    std::vector<int> level_of(lg.graph.n, -1);
    for (size_t i = 0; i < lg.by_level.size(); ++i) level_of[lg.by_level[i]] = (int)i;
    for (int l : level_of)
        if (l < 0) throw std::invalid_argument("level assignment not injective and total");
    for (const Edge& e : lg.graph.edges)
        if (!(level_of[e.tail] < level_of[e.head])) return Decision::No;
    {
        // Level planar drawings are planar; cut the sweep short otherwise.
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> bg(lg.graph.n);
        for (const Edge& e : lg.graph.edges) boost::add_edge(e.tail, e.head, bg);
        if (!boost::boyer_myrvold_planarity_test(bg)) return Decision::No;
    }
    Sweep sw{lg.graph, lg.graph.out_edges(), lg.graph.in_edges(), {}};
    return sw.run(lg.by_level) ? Decision::Yes : Decision::No;
}

Decision solve_upe_edgeless_distinct_y(const UpeInstance& inst) {
    if (!inst.partial_edges.empty())
        throw std::invalid_argument("solver requires an edgeless partial graph");
    if ((int)inst.partial_vertices.size() != inst.graph.n)
        throw std::invalid_argument("solver requires V(H) = V(G)");
    if (inst.embedding) throw std::invalid_argument("solver does not take a fixed embedding");
    {
        std::set<Rat> ys;
        for (const auto& [v, p] : inst.drawing.vertex_pos)
            if (!ys.insert(p.y).second)
                throw std::invalid_argument("solver requires pairwise distinct y-coordinates");
    }
    OrderedLevelGraph olg = upe_to_olp(inst);
    auto lg = as_singleton_levels(olg);
    if (!lg) throw std::logic_error("distinct y-coordinates must give singleton levels");
    return is_level_planar_singleton(*lg);
}

}  // namespace upex
