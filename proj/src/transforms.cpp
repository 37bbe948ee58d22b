#include "upex/transforms.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace upex {

namespace {

// Outgoing H-edges of v in left-to-right order of their first segments.
std::vector<Edge> outgoing_h_edges_ordered(const UpeInstance& inst, VertexId v) {
    std::vector<Edge> out;
    for (const Edge& e : inst.partial_edges)
        if (e.tail == v) out.push_back(e);
    std::sort(out.begin(), out.end(), [&](const Edge& a, const Edge& b) {
        const Polyline& ra = inst.drawing.edge_routes.at(a);
        const Polyline& rb = inst.drawing.edge_routes.at(b);
        Point da{ra[1].x - ra[0].x, ra[1].y - ra[0].y};
        Point db{rb[1].x - rb[0].x, rb[1].y - rb[0].y};
        return compare_tangents(da, db) < 0;
    });
    return out;
}

// Replace edge entries in the prescribed embedding when an edge (u,v)
// becomes a monotone path u -> c_1 -> ... -> c_k -> v.
void rewire_embedding_chain(UpwardEmbedding& emb, VertexId u, VertexId v,
                            const std::vector<VertexId>& chain) {
    if (chain.empty()) return;
    for (auto& w : emb.succ[u])
        if (w == v) w = chain.front();
    for (auto& w : emb.pred[v])
        if (w == u) w = chain.back();
    for (size_t i = 0; i < chain.size(); ++i) {
        VertexId prev = i == 0 ? u : chain[i - 1];
        VertexId next = i + 1 == chain.size() ? v : chain[i + 1];
        emb.succ[chain[i]] = {next};
        emb.pred[chain[i]] = {prev};
    }
}

struct SweepElem {
    bool is_vertex;
    VertexId v = -1;
    int h_edge = -1;  // index into a dense list of H-edges
};

// Straight-line pass of the edge-elimination sweep. Requires every H-edge
// route to be a single segment.
TransformResult eliminate_straight(const UpeInstance& inst, bool quadratic_sweep) {
    std::vector<Edge> h_edges(inst.partial_edges.begin(), inst.partial_edges.end());
    auto route = [&](int he) -> const Polyline& { return inst.drawing.edge_routes.at(h_edges[he]); };

    // Interesting lines: distinct pinned y values, ascending.
    std::vector<Rat> line_y;
    for (const auto& [v, p] : inst.drawing.vertex_pos) line_y.push_back(p.y);
    std::sort(line_y.begin(), line_y.end());
    line_y.erase(std::unique(line_y.begin(), line_y.end()), line_y.end());
    int m = (int)line_y.size();
    auto line_of = [&](const Rat& y) {
        return (int)(std::lower_bound(line_y.begin(), line_y.end(), y) - line_y.begin());
    };

    std::vector<std::vector<VertexId>> line_vertices(m);
    for (const auto& [v, p] : inst.drawing.vertex_pos) line_vertices[line_of(p.y)].push_back(v);
    for (auto& lv : line_vertices)
        std::sort(lv.begin(), lv.end(),
                  [&](VertexId a, VertexId b) { return inst.pos(a).x < inst.pos(b).x; });

    // Subdivision points, deduplicated per (H-edge, line).
    std::set<std::pair<int, int>> cuts;

    // Case (ii): lines adjacent to the endpoints of each H-edge.
    for (int he = 0; he < (int)h_edges.size(); ++he) {
        int lo = line_of(route(he).front().y);
        int hi = line_of(route(he).back().y);
        if (lo + 1 < hi) {
            cuts.insert({he, lo + 1});
            cuts.insert({he, hi - 1});
        }
    }

    // Case (i): edges next to a vertex in the per-line left-to-right order.
    auto x_at_line = [&](int he, int li) { return polyline_x_at(route(he), line_y[li]); };
    std::vector<SweepElem> order;  // X*_i, reused across lines
    for (int i = 0; i < m; ++i) {
        if (quadratic_sweep || i == 0) {
            // Recompute from scratch: vertices on the line plus edges
            // crossing it, by x.
            order.clear();
            for (VertexId v : line_vertices[i]) order.push_back({true, v, -1});
            for (int he = 0; he < (int)h_edges.size(); ++he)
                if (route(he).front().y < line_y[i] && line_y[i] < route(he).back().y)
                    order.push_back({false, -1, he});
            std::sort(order.begin(), order.end(), [&](const SweepElem& a, const SweepElem& b) {
                Rat xa = a.is_vertex ? inst.pos(a.v).x : x_at_line(a.h_edge, i);
                Rat xb = b.is_vertex ? inst.pos(b.v).x : x_at_line(b.h_edge, i);
                return xa < xb;
            });
        } else {
            // Maintain X*_{i} incrementally: expand the previous line's
            // vertices into their outgoing edges, then sink this line's
            // vertices into the list by binary search on crossing x.
            std::vector<SweepElem> between;
            for (const SweepElem& el : order) {
                if (!el.is_vertex) {
                    // Drop edges that ended on the previous line.
                    if (route(el.h_edge).back().y > line_y[i - 1]) between.push_back(el);
                    continue;
                }
                for (const Edge& e : outgoing_h_edges_ordered(inst, el.v)) {
                    int he = (int)(std::find(h_edges.begin(), h_edges.end(), e) - h_edges.begin());
                    between.push_back({false, -1, he});
                }
            }
            order = std::move(between);
            for (VertexId v : line_vertices[i]) {
                Rat xv = inst.pos(v).x;
                auto it = std::lower_bound(order.begin(), order.end(), xv,
                                           [&](const SweepElem& el, const Rat& x) {
                                               Rat ex = el.is_vertex ? inst.pos(el.v).x
                                                                     : x_at_line(el.h_edge, i);
                                               return ex < x;
                                           });
                // Edges entering v cross this line exactly at x(v); they form
                // a consecutive run which v replaces.
                auto run_end = it;
                while (run_end != order.end() && !run_end->is_vertex &&
                       x_at_line(run_end->h_edge, i) == xv)
                    ++run_end;
                it = order.erase(it, run_end);
                order.insert(it, {true, v, -1});
            }
        }
        for (size_t k = 0; k < order.size(); ++k) {
            if (!order[k].is_vertex) continue;
            if (k > 0 && !order[k - 1].is_vertex) cuts.insert({order[k - 1].h_edge, i});
            if (k + 1 < order.size() && !order[k + 1].is_vertex) cuts.insert({order[k + 1].h_edge, i});
        }
    }

    // Drop cuts that coincide with route endpoints (an edge whose neighbor
    // on the endpoint's own line is the endpoint itself never crosses it).
    for (auto it = cuts.begin(); it != cuts.end();) {
        const Polyline& r = route(it->first);
        if (!(r.front().y < line_y[it->second] && line_y[it->second] < r.back().y))
            it = cuts.erase(it);
        else
            ++it;
    }

    // Assemble the output instance.
    TransformResult res;
    UpeInstance& out = res.instance;
    out.graph.n = inst.graph.n;
    out.partial_vertices = inst.partial_vertices;
    out.drawing.vertex_pos = inst.drawing.vertex_pos;
    if (inst.embedding) out.embedding = inst.embedding;

    res.map.vertex_origin.resize(inst.graph.n);
    for (VertexId v = 0; v < inst.graph.n; ++v)
        res.map.vertex_origin[v] = {ElementMap::VertexOrigin::Original, v, -1, -1};

    // Per H-edge: ordered cut vertices.
    std::map<int, std::vector<VertexId>> chains;
    for (int he = 0; he < (int)h_edges.size(); ++he) {
        std::vector<int> lines;
        for (const auto& [e, li] : cuts)
            if (e == he) lines.push_back(li);
        std::sort(lines.begin(), lines.end());
        std::vector<VertexId> chain;
        for (int li : lines) {
            VertexId d = out.graph.n++;
            chain.push_back(d);
            out.partial_vertices.insert(d);
            out.drawing.vertex_pos[d] = Point{x_at_line(he, li), line_y[li]};
            res.map.vertex_origin.push_back(
                {ElementMap::VertexOrigin::OnEdge, -1, inst.graph.edge_index(h_edges[he].tail, h_edges[he].head), 0});
        }
        chains[he] = chain;
        if (out.embedding) {
            out.embedding->succ.resize(out.graph.n);
            out.embedding->pred.resize(out.graph.n);
            rewire_embedding_chain(*out.embedding, h_edges[he].tail, h_edges[he].head, chain);
        }
    }

    for (size_t ei = 0; ei < inst.graph.edges.size(); ++ei) {
        const Edge& e = inst.graph.edges[ei];
        auto hit = std::find(h_edges.begin(), h_edges.end(), e);
        if (hit == h_edges.end()) {
            out.graph.edges.push_back(e);
            res.map.edge_origin.push_back((int)ei);
            continue;
        }
        const std::vector<VertexId>& chain = chains[(int)(hit - h_edges.begin())];
        VertexId prev = e.tail;
        for (VertexId d : chain) {
            out.graph.edges.push_back({prev, d});
            res.map.edge_origin.push_back((int)ei);
            prev = d;
        }
        out.graph.edges.push_back({prev, e.head});
        res.map.edge_origin.push_back((int)ei);
    }
    return res;
}

// Turns every interior route point of every H-edge into a pinned vertex so
// that routes become single segments.
TransformResult subdivide_bends(const UpeInstance& inst) {
    TransformResult res;
    UpeInstance& out = res.instance;
    out.graph.n = inst.graph.n;
    out.partial_vertices = inst.partial_vertices;
    out.drawing.vertex_pos = inst.drawing.vertex_pos;
    if (inst.embedding) out.embedding = inst.embedding;

    res.map.vertex_origin.resize(inst.graph.n);
    for (VertexId v = 0; v < inst.graph.n; ++v)
        res.map.vertex_origin[v] = {ElementMap::VertexOrigin::Original, v, -1, -1};

    for (size_t ei = 0; ei < inst.graph.edges.size(); ++ei) {
        const Edge& e = inst.graph.edges[ei];
        auto rit = inst.drawing.edge_routes.find(e);
        if (rit == inst.drawing.edge_routes.end() || rit->second.size() == 2) {
            out.graph.edges.push_back(e);
            res.map.edge_origin.push_back((int)ei);
            if (rit != inst.drawing.edge_routes.end()) {
                out.partial_edges.insert(e);
                out.drawing.edge_routes[e] = rit->second;
            }
            continue;
        }
        const Polyline& r = rit->second;
        std::vector<VertexId> chain;
        for (size_t k = 1; k + 1 < r.size(); ++k) {
            VertexId b = out.graph.n++;
            chain.push_back(b);
            out.partial_vertices.insert(b);
            out.drawing.vertex_pos[b] = r[k];
            res.map.vertex_origin.push_back({ElementMap::VertexOrigin::OnEdge, -1, (int)ei, (int)k});
        }
        VertexId prev = e.tail;
        for (size_t k = 0; k <= chain.size(); ++k) {
            VertexId next = k == chain.size() ? e.head : chain[k];
            Edge sub{prev, next};
            out.graph.edges.push_back(sub);
            res.map.edge_origin.push_back((int)ei);
            out.partial_edges.insert(sub);
            out.drawing.edge_routes[sub] = {r[k], r[k + 1]};
            prev = next;
        }
        if (out.embedding) {
            out.embedding->succ.resize(out.graph.n);
            out.embedding->pred.resize(out.graph.n);
            rewire_embedding_chain(*out.embedding, e.tail, e.head, chain);
        }
    }
    return res;
}

ElementMap compose_maps(const ElementMap& first, const ElementMap& second) {
    ElementMap res;
    res.vertex_origin.reserve(second.vertex_origin.size());
    for (const auto& vo : second.vertex_origin) {
        if (vo.kind == ElementMap::VertexOrigin::Original) {
            res.vertex_origin.push_back(first.vertex_origin[vo.original_vertex]);
        } else if (vo.kind == ElementMap::VertexOrigin::OnEdge) {
            auto out = vo;
            int mid_edge = vo.original_edge;
            out.original_edge = first.edge_origin[mid_edge];
            // Segment index within the original route is inherited from the
            // bend-subdivision stage when present.
            res.vertex_origin.push_back(out);
        } else {
            auto out = vo;
            out.original_vertex = first.vertex_origin[vo.original_vertex].original_vertex;
            res.vertex_origin.push_back(out);
        }
    }
    for (int eo : second.edge_origin)
        res.edge_origin.push_back(eo < 0 ? -1 : first.edge_origin[eo]);
    return res;
}

}  // namespace

TransformResult eliminate_partial_edges(const UpeInstance& inst, bool quadratic_sweep) {
    if (inst.partial_edges.empty()) {
        TransformResult res;
        res.instance = inst;
        res.map.vertex_origin.resize(inst.graph.n);
        for (VertexId v = 0; v < inst.graph.n; ++v)
            res.map.vertex_origin[v] = {ElementMap::VertexOrigin::Original, v, -1, -1};
        for (size_t ei = 0; ei < inst.graph.edges.size(); ++ei)
            res.map.edge_origin.push_back((int)ei);
        return res;
    }
    TransformResult pre = subdivide_bends(inst);
    TransformResult main = eliminate_straight(pre.instance, quadratic_sweep);
    TransformResult res;
    res.instance = std::move(main.instance);
    res.map = compose_maps(pre.map, main.map);
    return res;
}

TransformResult make_distinct_y(const UpeInstance& inst) {
    TransformResult base = eliminate_partial_edges(inst);
    const UpeInstance& in = base.instance;

    std::map<Rat, std::vector<VertexId>> lines;
    for (const auto& [v, p] : in.drawing.vertex_pos) lines[p.y].push_back(v);
    bool duplicates = false;
    for (auto& [y, vs] : lines)
        if (vs.size() > 1) duplicates = true;
    if (!duplicates) return base;

    std::vector<Rat> ys;
    for (auto& [y, vs] : lines) {
        ys.push_back(y);
        std::sort(vs.begin(), vs.end(),
                  [&](VertexId a, VertexId b) { return in.pos(a).x < in.pos(b).x; });
    }

    // Strip heights: half the smaller gap to a neighboring line, capped at 1.
    std::vector<Rat> heights(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) {
        Rat h = 1;
        if (i > 0) h = std::min(h, Rat((ys[i] - ys[i - 1]) / 2));
        if (i + 1 < ys.size()) h = std::min(h, Rat((ys[i + 1] - ys[i]) / 2));
        heights[i] = h;
    }

    TransformResult res;
    UpeInstance& out = res.instance;
    if (in.embedding) {
        out.embedding = UpwardEmbedding{};
    }

    // Pinned vertices split into (low, high); others carry over.
    std::map<VertexId, std::pair<VertexId, VertexId>> split;
    std::map<VertexId, VertexId> carry;
    auto new_vertex = [&]() { return out.graph.n++; };
    for (VertexId v = 0; v < in.graph.n; ++v) {
        if (in.pinned(v)) continue;
        VertexId nv = new_vertex();
        carry[v] = nv;
        res.map.vertex_origin.push_back(base.map.vertex_origin[v]);
    }
    for (size_t i = 0; i < ys.size(); ++i) {
        const auto& vs = lines[ys[i]];
        long K = (long)vs.size();
        for (size_t j = 0; j < vs.size(); ++j) {
            VertexId v = vs[j];
            Rat len = Rat((long)j + 1) * heights[i] / Rat(3 * K);
            VertexId lo = new_vertex();
            VertexId hi = new_vertex();
            split[v] = {lo, hi};
            Point p = in.pos(v);
            Point plo{p.x, p.y - len / 2};
            Point phi{p.x, p.y + len / 2};
            out.partial_vertices.insert(lo);
            out.partial_vertices.insert(hi);
            out.drawing.vertex_pos[lo] = plo;
            out.drawing.vertex_pos[hi] = phi;
            Edge e{lo, hi};
            out.graph.edges.push_back(e);
            res.map.edge_origin.push_back(-1);
            out.partial_edges.insert(e);
            out.drawing.edge_routes[e] = {plo, phi};
            auto orig = base.map.vertex_origin[v];
            auto lo_origin = orig;
            auto hi_origin = orig;
            if (orig.kind == ElementMap::VertexOrigin::Original) {
                lo_origin.kind = ElementMap::VertexOrigin::SplitLow;
                hi_origin.kind = ElementMap::VertexOrigin::SplitHigh;
            }
            res.map.vertex_origin.push_back(lo_origin);
            res.map.vertex_origin.push_back(hi_origin);
        }
    }
    auto tail_of = [&](VertexId v) { return in.pinned(v) ? split[v].second : carry[v]; };
    auto head_of = [&](VertexId v) { return in.pinned(v) ? split[v].first : carry[v]; };
    for (size_t ei = 0; ei < in.graph.edges.size(); ++ei) {
        const Edge& e = in.graph.edges[ei];
        out.graph.edges.push_back({tail_of(e.tail), head_of(e.head)});
        res.map.edge_origin.push_back(base.map.edge_origin[ei]);
    }
    if (in.embedding) {
        out.embedding->succ.assign(out.graph.n, {});
        out.embedding->pred.assign(out.graph.n, {});
        for (VertexId v = 0; v < in.graph.n; ++v) {
            std::vector<VertexId> succ, pred;
            for (VertexId w : in.embedding->succ[v]) succ.push_back(head_of(w));
            for (VertexId w : in.embedding->pred[v]) pred.push_back(tail_of(w));
            if (in.pinned(v)) {
                auto [lo, hi] = split[v];
                out.embedding->pred[lo] = pred;
                out.embedding->succ[lo] = {hi};
                out.embedding->pred[hi] = {lo};
                out.embedding->succ[hi] = succ;
            } else {
                out.embedding->succ[carry[v]] = succ;
                out.embedding->pred[carry[v]] = pred;
            }
        }
    }
    return res;
}

OrderedLevelGraph upe_to_olp(const UpeInstance& inst) {
    if (!inst.partial_edges.empty())
        throw std::invalid_argument("upe_to_olp requires an edgeless partial graph");
    if ((int)inst.partial_vertices.size() != inst.graph.n)
        throw std::invalid_argument("upe_to_olp requires V(H) = V(G)");
    OrderedLevelGraph olg;
    olg.graph = inst.graph;
    std::vector<Rat> ys;
    for (const auto& [v, p] : inst.drawing.vertex_pos) ys.push_back(p.y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    olg.level.assign(inst.graph.n, 0);
    olg.xi.assign(ys.size(), {});
    for (VertexId v = 0; v < inst.graph.n; ++v) {
        int l = (int)(std::lower_bound(ys.begin(), ys.end(), inst.pos(v).y) - ys.begin());
        olg.level[v] = l + 1;
        olg.xi[l].push_back(v);
    }
    for (auto& lv : olg.xi)
        std::sort(lv.begin(), lv.end(),
                  [&](VertexId a, VertexId b) { return inst.pos(a).x < inst.pos(b).x; });
    return olg;
}

UpeInstance olp_to_upe(const OrderedLevelGraph& olg) {
    UpeInstance inst;
    inst.graph = olg.graph;
    for (VertexId v = 0; v < olg.graph.n; ++v) inst.partial_vertices.insert(v);
    for (size_t l = 0; l < olg.xi.size(); ++l)
        for (size_t k = 0; k < olg.xi[l].size(); ++k)
            inst.drawing.vertex_pos[olg.xi[l][k]] = Point{Rat((long)k + 1), Rat((long)l + 1)};
    return inst;
}

}  // namespace upex
