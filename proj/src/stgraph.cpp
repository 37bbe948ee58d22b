#include "upex/stgraph.hpp"

#include "upex/transforms.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace upex {

bool is_st_graph(const DirectedGraph& g) {
    if (g.n == 0) return false;
    if (g.n == 1) return g.edges.empty();
    return g.sources().size() == 1 && g.sinks().size() == 1 && g.is_acyclic();
}

StGraph make_st_graph(const DirectedGraph& g) {
    if (!is_st_graph(g)) throw std::invalid_argument("not an st-graph");
    StGraph st;
    st.graph = g;
    st.s = g.n == 1 ? 0 : g.sources().front();
    st.t = g.n == 1 ? 0 : g.sinks().front();
    return st;
}

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

namespace {

struct Rotations {
    // Per vertex: incident edge indices in clockwise order, successors left
    // to right followed by predecessors right to left.
    std::vector<std::vector<int>> order;
    std::vector<std::map<int, int>> pos;  // edge index -> position
};

Rotations build_rotations(const DirectedGraph& g, const UpwardEmbedding& emb) {
    if (!emb.consistent_with(g)) throw std::invalid_argument("embedding inconsistent with graph");
    Rotations rot;
    rot.order.resize(g.n);
    rot.pos.resize(g.n);
    std::map<Edge, int> index;
    for (size_t i = 0; i < g.edges.size(); ++i) index[g.edges[i]] = (int)i;
    auto edge_to = [&](VertexId u, VertexId v) { return index.at(Edge{u, v}); };
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId w : emb.succ[v]) rot.order[v].push_back(edge_to(v, w));
        for (auto it = emb.pred[v].rbegin(); it != emb.pred[v].rend(); ++it)
            rot.order[v].push_back(edge_to(*it, v));
        for (size_t p = 0; p < rot.order[v].size(); ++p) rot.pos[v][rot.order[v][p]] = (int)p;
    }
    return rot;
}

}  // namespace

FaceSet compute_faces(const DirectedGraph& g, const UpwardEmbedding& emb) {
    if (g.edges.empty()) throw std::invalid_argument("faces need at least one edge");
    Rotations rot = build_rotations(g, emb);

    // Darts: 2*ei + 0 forward (tail->head), +1 backward.
    int m = (int)g.edges.size();
    std::vector<int> face_of(2 * m, -1);
    auto dart_head = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].head : g.edges[d / 2].tail; };
    // Walking dart d keeps its face on the right; the boundary continues
    // along the clockwise predecessor of the entering incidence.
    auto next_dart = [&](int d) {
        int ei = d / 2;
        VertexId w = dart_head(d);
        int deg = (int)rot.order[w].size();
        int p = rot.pos[w].at(ei);
        int ej = rot.order[w][(p - 1 + deg) % deg];
        return g.edges[ej].tail == w ? 2 * ej : 2 * ej + 1;
    };

    FaceSet fs;
    std::vector<std::vector<int>> cycles;
    for (int d0 = 0; d0 < 2 * m; ++d0) {
        if (face_of[d0] >= 0) continue;
        std::vector<int> cyc;
        int d = d0;
        do {
            face_of[d] = (int)cycles.size();
            cyc.push_back(d);
            d = next_dart(d);
        } while (d != d0);
        cycles.push_back(std::move(cyc));
    }
    if ((int)cycles.size() != m - g.n + 2)
        throw std::invalid_argument("embedding rotation is not planar");

    for (const auto& cyc : cycles) {
        // Vertex sequence: origin of each dart.
        int L = (int)cyc.size();
        auto origin = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].tail : g.edges[d / 2].head; };
        int bottom_at = -1, top_at = -1;
        for (int p = 0; p < L; ++p) {
            int d = cyc[p];
            int prev = cyc[(p - 1 + L) % L];
            bool out_next = d % 2 == 0;    // leaving the origin along an outgoing edge
            bool in_prev = prev % 2 == 1;  // arrived there against an incoming edge
            if (out_next && in_prev) {
                if (bottom_at >= 0) throw std::invalid_argument("face with two local sources");
                bottom_at = p;
            }
            if (!out_next && !in_prev) {
                if (top_at >= 0) throw std::invalid_argument("face with two local sinks");
                top_at = p;
            }
        }
        if (bottom_at < 0 || top_at < 0) throw std::invalid_argument("face without extremes");
        Face f;
        for (int p = bottom_at;; p = (p + 1) % L) {
            f.left.push_back(origin(cyc[p]));
            if (p == top_at) break;
        }
        for (int p = top_at;; p = (p + 1) % L) {
            f.right.push_back(origin(cyc[p]));
            if (p == bottom_at) break;
        }
        std::reverse(f.right.begin(), f.right.end());
        fs.faces.push_back(std::move(f));
    }

    // Outer face: right of the first edge of the rightmost path.
    VertexId s = g.sources().front();
    if (emb.succ[s].empty()) throw std::invalid_argument("source without successors");
    int first = g.edge_index(s, emb.succ[s].back());
    fs.outer = face_of[2 * first];
    return fs;
}

// ---------------------------------------------------------------------------
// Transitive reduction and dominance
// ---------------------------------------------------------------------------

std::pair<StGraph, UpwardEmbedding> transitive_reduction(const StGraph& g,
                                                         const UpwardEmbedding& emb) {
    assert(!g.graph.allow_parallel);
    std::set<Edge> transitive;
    if (!g.graph.edges.empty()) {
        FaceSet fs = compute_faces(g.graph, emb);
        for (const Face& f : fs.faces) {
            if (f.left.size() == 2 && f.right.size() >= 3)
                transitive.insert({f.left.front(), f.left.back()});
            if (f.right.size() == 2 && f.left.size() >= 3)
                transitive.insert({f.right.front(), f.right.back()});
        }
    }
    StGraph out;
    out.s = g.s;
    out.t = g.t;
    out.graph.n = g.graph.n;
    for (const Edge& e : g.graph.edges)
        if (!transitive.count(e)) out.graph.edges.push_back(e);
    UpwardEmbedding oe;
    oe.succ.resize(g.graph.n);
    oe.pred.resize(g.graph.n);
    for (VertexId v = 0; v < g.graph.n; ++v) {
        for (VertexId w : emb.succ[v])
            if (!transitive.count({v, w})) oe.succ[v].push_back(w);
        for (VertexId u : emb.pred[v])
            if (!transitive.count({u, v})) oe.pred[v].push_back(u);
    }
    return {out, oe};
}

namespace {

// Topological numbering via a stack, expanding successor lists leftmost or
// rightmost first. On reduced upward planar st-graphs these give the two
// dominance coordinates.
std::vector<int> sweep_numbering(const DirectedGraph& g, const UpwardEmbedding& emb,
                                 bool leftmost) {
    std::vector<int> indeg(g.n, 0);
    for (const Edge& e : g.edges) indeg[e.head]++;
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < g.n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    std::vector<int> num(g.n, -1);
    int cnt = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        num[v] = cnt++;
        const auto& succ = emb.succ[v];
        if (leftmost) {
            for (auto it = succ.rbegin(); it != succ.rend(); ++it)
                if (--indeg[*it] == 0) stack.push_back(*it);
        } else {
            for (auto it = succ.begin(); it != succ.end(); ++it)
                if (--indeg[*it] == 0) stack.push_back(*it);
        }
    }
    if (cnt != g.n) throw std::invalid_argument("graph is cyclic");
    return num;
}

}  // namespace

DominanceIndex build_dominance_index(const StGraph& g, const UpwardEmbedding& emb) {
    auto [red, red_emb] = transitive_reduction(g, emb);
    DominanceIndex idx;
    idx.dom_x = sweep_numbering(red.graph, red_emb, true);
    idx.dom_y = sweep_numbering(red.graph, red_emb, false);
    return idx;
}

// ---------------------------------------------------------------------------
// Conditions 1 and 2
// ---------------------------------------------------------------------------

bool check_condition1(const UpeInstance& inst) {
    if (!inst.partial_edges.empty())
        throw std::invalid_argument("condition 1 expects an edgeless partial graph");
    // Auxiliary graph: G plus one connector between consecutive y-groups.
    std::map<Rat, std::vector<VertexId>> groups;
    for (const auto& [v, p] : inst.drawing.vertex_pos) groups[p.y].push_back(v);

    int n = inst.graph.n;
    int total = n + std::max(0, (int)groups.size() - 1);
    std::vector<std::vector<int>> adj(total);
    std::vector<int> indeg(total, 0);
    auto add_edge = [&](int a, int b) {
        adj[a].push_back(b);
        indeg[b]++;
    };
    for (const Edge& e : inst.graph.edges) add_edge(e.tail, e.head);
    int connector = n;
    const std::vector<VertexId>* prev = nullptr;
    for (const auto& [y, vs] : groups) {
        if (prev) {
            for (VertexId v : *prev) add_edge(v, connector);
            for (VertexId v : vs) add_edge(connector, v);
            ++connector;
        }
        prev = &vs;
    }
    // Acyclicity.
    std::vector<int> ready;
    for (int v = 0; v < total; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int w : adj[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    return seen == total;
}

bool check_condition2_fixed(const UpeInstance& inst, const DominanceIndex& idx) {
    if (!inst.partial_edges.empty())
        throw std::invalid_argument("condition 2 expects an edgeless partial graph");
    std::map<Rat, std::vector<VertexId>> groups;
    for (const auto& [v, p] : inst.drawing.vertex_pos) groups[p.y].push_back(v);
    for (auto& [y, vs] : groups) {
        std::sort(vs.begin(), vs.end(),
                  [&](VertexId a, VertexId b) { return inst.pos(a).x < inst.pos(b).x; });
        for (size_t l = 0; l + 1 < vs.size(); ++l)
            if (idx.relation(vs[l + 1], vs[l]) != Relation::Left) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fixed-embedding solver
// ---------------------------------------------------------------------------

Decision solve_st_fue(const UpeInstance& inst) {
    if (!inst.embedding) throw std::invalid_argument("solve_st_fue needs an embedding");
    StGraph st = make_st_graph(inst.graph);
    if (inst.graph.n == 1) return Decision::Yes;
    // Planarity of the prescribed rotation (faces throw otherwise).
    compute_faces(inst.graph, *inst.embedding);

    auto [work, map] = eliminate_partial_edges(inst);
    if (!check_condition1(work)) return Decision::No;
    StGraph wst = make_st_graph(work.graph);
    DominanceIndex idx = build_dominance_index(wst, *work.embedding);
    return check_condition2_fixed(work, idx) ? Decision::Yes : Decision::No;
}

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

namespace {

struct SigElem {
    bool is_vertex;
    int id;
    bool operator==(const SigElem& o) const { return is_vertex == o.is_vertex && id == o.id; }
};

}  // namespace

FullDrawing build_witness_drawing_st(const UpeInstance& inst) {
    if (solve_st_fue(inst) != Decision::Yes)
        throw std::invalid_argument("witness requested for a NO instance");
    if (inst.graph.n == 1) {
        FullDrawing d;
        d.vertex_pos.push_back(inst.pinned(0) ? inst.pos(0) : Point{rat(0), rat(0)});
        return d;
    }

    auto elim = eliminate_partial_edges(inst);
    const UpeInstance& work = elim.instance;
    const DirectedGraph& g = work.graph;
    const UpwardEmbedding& emb = *work.embedding;
    StGraph st = make_st_graph(g);

    // 1. Heights for every vertex: pinned ones keep theirs, the rest go
    // strictly above their predecessors and below their lowest pinned
    // successor.
    std::vector<std::optional<Rat>> Y(g.n);
    std::set<Rat> used;
    for (const auto& [v, p] : work.drawing.vertex_pos) {
        Y[v] = p.y;
        used.insert(p.y);
    }
    auto topo = g.topological_order();
    auto in = g.in_edges();
    auto out = g.out_edges();
    // Minimum pinned successor height, as a DAG sweep from the top.
    std::vector<std::optional<Rat>> mps(g.n);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        VertexId v = *it;
        for (int ei : out[v]) {
            VertexId w = g.edges[ei].head;
            std::optional<Rat> cand = work.pinned(w) ? std::optional<Rat>(work.pos(w).y) : mps[w];
            if (cand && (!mps[v] || *cand < *mps[v])) mps[v] = cand;
        }
    }
    for (VertexId v : topo) {
        if (Y[v]) continue;
        std::optional<Rat> low;
        for (int ei : in[v]) {
            VertexId u = g.edges[ei].tail;
            if (!low || *Y[u] > *low) low = *Y[u];
        }
        const std::optional<Rat>& high = mps[v];
        Rat y;
        if (low && high) {
            assert(*low < *high);
            y = (*low + *high) / 2;
            while (used.count(y)) y = (y + *high) / 2;
        } else if (low) {
            y = *low + 1;
            while (used.count(y)) y += 1;
        } else if (high) {
            y = *high - 1;
            while (used.count(y)) y -= 1;
        } else {
            y = 0;
            while (used.count(y)) y += 1;
        }
        Y[v] = y;
        used.insert(y);
    }

    // 2. Lines and their initial vertex orders.
    std::vector<Rat> line_y(used.begin(), used.end());
    auto line_of = [&](const Rat& y) {
        return (int)(std::lower_bound(line_y.begin(), line_y.end(), y) - line_y.begin());
    };
    int L = (int)line_y.size();
    std::vector<std::vector<SigElem>> sig(L);
    {
        std::vector<std::vector<VertexId>> on_line(L);
        for (VertexId v = 0; v < g.n; ++v) on_line[line_of(*Y[v])].push_back(v);
        for (auto& vs : on_line)
            std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) {
                bool pa = work.pinned(a), pb = work.pinned(b);
                if (pa && pb) return work.pos(a).x < work.pos(b).x;
                return a < b;  // unpinned vertices sit alone on their line
            });
        for (int i = 0; i < L; ++i)
            for (VertexId v : on_line[i]) sig[i].push_back({true, v});
    }

    auto insert_after = [&](int li, const SigElem& anchor, int edge_idx) {
        auto& s = sig[li];
        auto it = std::find(s.begin(), s.end(), anchor);
        assert(it != s.end());
        s.insert(std::next(it), SigElem{false, edge_idx});
    };

    std::vector<bool> drawn(g.edges.size(), false);
    auto span_lines = [&](int ei) {
        int lo = line_of(*Y[g.edges[ei].tail]);
        int hi = line_of(*Y[g.edges[ei].head]);
        return std::pair<int, int>(lo, hi);
    };

    // 3. Leftmost path, swinging out to the far left: front insertion.
    {
        VertexId v = st.s;
        while (v != st.t) {
            VertexId w = emb.succ[v].front();
            int ei = g.edge_index(v, w);
            auto [lo, hi] = span_lines(ei);
            for (int li = lo + 1; li < hi; ++li)
                sig[li].insert(sig[li].begin(), SigElem{false, ei});
            drawn[ei] = true;
            v = w;
        }
    }

    // 4. Peel faces whose left boundary is drawn and right boundary is not.
    FaceSet fs = compute_faces(g, emb);
    std::vector<bool> done(fs.faces.size(), false);
    done[fs.outer] = true;
    auto boundary_edges = [&](const std::vector<VertexId>& path) {
        std::vector<int> es;
        for (size_t p = 0; p + 1 < path.size(); ++p) es.push_back(g.edge_index(path[p], path[p + 1]));
        return es;
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t fi = 0; fi < fs.faces.size(); ++fi) {
            if (done[fi]) continue;
            const Face& f = fs.faces[fi];
            auto le = boundary_edges(f.left);
            auto re = boundary_edges(f.right);
            bool ready = true;
            for (int ei : le)
                if (!drawn[ei]) ready = false;
            for (int ei : re)
                if (drawn[ei]) ready = false;
            if (!ready) continue;
            for (int ei : re) {
                auto [lo, hi] = span_lines(ei);
                for (int li = lo + 1; li < hi; ++li) {
                    // Left-boundary element at this height: a vertex of the
                    // left boundary on the line, or the boundary edge
                    // crossing it.
                    SigElem anchor{true, -1};
                    for (size_t p = 0; p < f.left.size(); ++p) {
                        int lp = line_of(*Y[f.left[p]]);
                        if (lp == li) {
                            anchor = {true, f.left[p]};
                            break;
                        }
                        if (p + 1 < f.left.size() && lp < li && line_of(*Y[f.left[p + 1]]) > li) {
                            anchor = {false, g.edge_index(f.left[p], f.left[p + 1])};
                            break;
                        }
                    }
                    assert(anchor.id >= 0);
                    insert_after(li, anchor, ei);
                }
                drawn[ei] = true;
            }
            done[fi] = true;
            progress = true;
        }
    }
    for (size_t fi = 0; fi < fs.faces.size(); ++fi) assert(done[fi]);
    for (size_t ei = 0; ei < g.edges.size(); ++ei) assert(drawn[ei]);

    // 5. Map the work-instance certificate back onto the original instance.
    int n0 = inst.graph.n;
    Certificate cert;
    cert.y_class.assign(n0, -1);
    std::vector<int> class_of_line(L, -1);
    int k = 0;
    for (int li = 0; li < L; ++li) {
        bool keep = false;
        for (const SigElem& el : sig[li])
            if (el.is_vertex && el.id < n0) keep = true;
        if (keep) class_of_line[li] = k++;
    }
    cert.sigma.resize(k);
    for (int li = 0; li < L; ++li) {
        int ci = class_of_line[li];
        if (ci < 0) continue;
        for (const SigElem& el : sig[li]) {
            if (el.is_vertex) {
                if (el.id < n0) {
                    cert.sigma[ci].push_back({true, el.id});
                    cert.y_class[el.id] = ci;
                } else {
                    cert.sigma[ci].push_back({false, elim.map.vertex_origin[el.id].original_edge});
                }
            } else {
                cert.sigma[ci].push_back({false, elim.map.edge_origin[el.id]});
            }
        }
    }

    CheckResult cc = check_certificate(inst, cert);
    if (!cc.pass)
        throw std::logic_error("witness construction produced a failing certificate: check " +
                               std::to_string(cc.failed_check) + " " + cc.detail);
    FullDrawing d = materialize_certificate(inst, cert);
    VerifyResult vr = verify_drawing(inst, d);
    if (!vr.accepted()) throw std::logic_error("witness drawing rejected: " + vr.reason);
    return d;
}

}  // namespace upex
