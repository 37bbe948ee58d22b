#include "upex/spqr.hpp"

#include "upex/transforms.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace upex {

namespace {

// ---- small undirected helpers over global-id edge lists ----

std::vector<VertexId> vertices_of(const std::vector<Edge>& edges) {
    std::set<VertexId> vs;
    for (const Edge& e : edges) {
        vs.insert(e.tail);
        vs.insert(e.head);
    }
    return {vs.begin(), vs.end()};
}

// Connected components of the graph on `edges` after deleting `banned`
// vertices. Returns a map vertex -> component id (banned vertices absent).
std::map<VertexId, int> components_without(const std::vector<Edge>& edges,
                                           const std::set<VertexId>& banned) {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const Edge& e : edges) {
        if (banned.count(e.tail) || banned.count(e.head)) continue;
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    for (VertexId v : vertices_of(edges))
        if (!banned.count(v)) adj.try_emplace(v);
    std::map<VertexId, int> comp;
    int c = 0;
    for (const auto& [v0, _] : adj) {
        if (comp.count(v0)) continue;
        std::vector<VertexId> stack{v0};
        comp[v0] = c;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : adj[v])
                if (!comp.count(w)) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return comp;
}

bool is_connected(const std::vector<Edge>& edges) {
    auto comp = components_without(edges, {});
    int mx = -1;
    for (auto& [v, c] : comp) mx = std::max(mx, c);
    return mx <= 0;
}

std::vector<VertexId> cut_vertices(const std::vector<Edge>& edges) {
    std::vector<VertexId> cuts;
    for (VertexId v : vertices_of(edges)) {
        auto comp = components_without(edges, {v});
        int mx = -1;
        for (auto& [w, c] : comp) mx = std::max(mx, c);
        if (mx >= 1) cuts.push_back(v);
    }
    return cuts;
}

struct Builder {
    SpqrTree tree;

    int new_node(SpqrTree::Kind kind, VertexId ps, VertexId pt) {
        SpqrTree::Node nd;
        nd.kind = kind;
        nd.pole_s = ps;
        nd.pole_t = pt;
        tree.nodes.push_back(std::move(nd));
        return (int)tree.nodes.size() - 1;
    }

    // Source pole of a pertinent edge set between a and b.
    static std::pair<VertexId, VertexId> orient_poles(const std::vector<Edge>& edges, VertexId a,
                                                      VertexId b) {
        bool a_src = true, b_src = true;
        for (const Edge& e : edges) {
            if (e.head == a) a_src = false;
            if (e.head == b) b_src = false;
        }
        if (a_src && !b_src) return {a, b};
        if (b_src && !a_src) return {b, a};
        throw std::logic_error("split component is not a pole-to-pole dag");
    }

    int decompose(const std::vector<Edge>& edges, VertexId u, VertexId v) {
        if (edges.size() == 1) {
            int q = new_node(SpqrTree::Q, u, v);
            tree.nodes[q].q_edge = edges.front();
            tree.nodes[q].skel_vertices = {edges.front().tail, edges.front().head};
            tree.nodes[q].skel_edges.push_back({edges.front().tail, edges.front().head, -1});
            return q;
        }

        // Series: the pertinent graph without its closing edge has cut
        // vertices, which chain the blocks from u to v.
        auto cuts = cut_vertices(edges);
        if (!cuts.empty()) return make_series(edges, u, v, cuts);

        // Parallel: {u,v} splits the pertinent graph.
        {
            std::vector<Edge> direct, rest;
            for (const Edge& e : edges)
                ((e.tail == u && e.head == v) || (e.tail == v && e.head == u) ? direct : rest)
                    .push_back(e);
            auto comp = components_without(edges, {u, v});
            int ncomp = 0;
            for (auto& [w, c] : comp) ncomp = std::max(ncomp, c + 1);
            if ((int)direct.size() + ncomp >= 2) return make_parallel(edges, u, v, comp, direct);
        }

        return make_rigid(edges, u, v);
    }

    int make_series(const std::vector<Edge>& edges, VertexId u, VertexId v,
                    const std::vector<VertexId>& cuts) {
        // Blocks in chain order: peel components around cut vertices by
        // walking from u.
        std::set<VertexId> cutset(cuts.begin(), cuts.end());
        // Assign every edge to a block: two edges share a block iff they
        // are connected without passing through a cut vertex interior.
        // Walk: repeatedly take the block incident to the current pole.
        std::vector<std::vector<Edge>> blocks;
        std::vector<VertexId> chain{u};
        std::vector<bool> edge_used(edges.size(), false);
        VertexId cur = u;
        while (cur != v) {
            // Grow the block reachable from cur without crossing other cut
            // vertices (they may appear only as the far end).
            std::vector<Edge> block;
            std::set<VertexId> frontier{cur};
            std::set<VertexId> visited{cur};
            bool grown = true;
            while (grown) {
                grown = false;
                for (size_t i = 0; i < edges.size(); ++i) {
                    if (edge_used[i]) continue;
                    VertexId a = edges[i].tail, b = edges[i].head;
                    // Expansion may not pass through a cut vertex other
                    // than the current pole; reaching one is fine.
                    bool via_a = visited.count(a) && !(cutset.count(a) && a != cur);
                    bool via_b = visited.count(b) && !(cutset.count(b) && b != cur);
                    if (!via_a && !via_b) continue;
                    edge_used[i] = true;
                    block.push_back(edges[i]);
                    visited.insert(a);
                    visited.insert(b);
                    grown = true;
                }
            }
            if (block.empty()) throw std::logic_error("series chain construction stuck");
            // Far pole: the unique cut vertex (or v) in the block besides cur.
            VertexId far = -1;
            for (const Edge& e : block)
                for (VertexId w : {e.tail, e.head})
                    if (w != cur && (cutset.count(w) || w == v)) {
                        if (far >= 0 && far != w)
                            throw std::logic_error("series block with two far poles");
                        far = w;
                    }
            if (far < 0) throw std::logic_error("series block without far pole");
            blocks.push_back(std::move(block));
            chain.push_back(far);
            cur = far;
        }
        int nd = new_node(SpqrTree::S, u, v);
        tree.nodes[nd].skel_vertices = chain;
        for (size_t i = 0; i < blocks.size(); ++i) {
            int child = decompose(blocks[i], chain[i], chain[i + 1]);
            tree.nodes[child].parent = nd;
            tree.nodes[nd].children.push_back(child);
            tree.nodes[nd].skel_edges.push_back({chain[i], chain[i + 1], child});
        }
        tree.nodes[nd].skel_edges.push_back({u, v, -2});
        return nd;
    }

    int make_parallel(const std::vector<Edge>& edges, VertexId u, VertexId v,
                      const std::map<VertexId, int>& comp, const std::vector<Edge>& direct) {
        int nd = new_node(SpqrTree::P, u, v);
        tree.nodes[nd].skel_vertices = {u, v};
        int ncomp = 0;
        for (auto& [w, c] : comp) ncomp = std::max(ncomp, c + 1);
        std::vector<std::vector<Edge>> groups(ncomp);
        for (const Edge& e : edges) {
            if ((e.tail == u && e.head == v) || (e.tail == v && e.head == u)) continue;
            VertexId inner = (e.tail == u || e.tail == v) ? e.head : e.tail;
            groups[comp.at(inner)].push_back(e);
        }
        for (const Edge& e : direct) groups.push_back({e});
        for (auto& grp : groups) {
            auto [ps, pt] = orient_poles(grp, u, v);
            if (!(ps == u && pt == v)) throw std::logic_error("parallel component inverted");
            int child = decompose(grp, u, v);
            tree.nodes[child].parent = nd;
            tree.nodes[nd].children.push_back(child);
            tree.nodes[nd].skel_edges.push_back({u, v, child});
        }
        tree.nodes[nd].skel_edges.push_back({u, v, -2});
        return nd;
    }

    int make_rigid(const std::vector<Edge>& edges, VertexId u, VertexId v) {
        std::vector<Edge> closed = edges;
        closed.push_back({u, v});
        auto verts = vertices_of(edges);

        // Candidate split pairs of the closed pertinent graph.
        std::vector<std::pair<VertexId, VertexId>> cands;
        for (size_t i = 0; i < verts.size(); ++i) {
            for (size_t j = i + 1; j < verts.size(); ++j) {
                VertexId a = verts[i], b = verts[j];
                if ((a == u && b == v) || (a == v && b == u)) continue;
                bool adjacent = false;
                for (const Edge& e : edges)
                    if ((e.tail == a && e.head == b) || (e.tail == b && e.head == a))
                        adjacent = true;
                bool separates = false;
                auto comp = components_without(closed, {a, b});
                int ncomp = 0;
                for (auto& [w, c] : comp) ncomp = std::max(ncomp, c + 1);
                if (ncomp >= 2) separates = true;
                if (adjacent || separates) cands.push_back({a, b});
            }
        }

        // Which component (after removing {c,d}) is "outside": the one that
        // holds the closing edge, i.e. u (or v when u is removed).
        auto inside_component = [&](VertexId a, VertexId b, VertexId c, VertexId d,
                                    const std::map<VertexId, int>& comp) -> bool {
            // true iff {a,b} \ {c,d} lies in one non-outside component
            int outside;
            if (c != u && d != u) outside = comp.at(u);
            else if (c != v && d != v) outside = comp.at(v);
            else return false;  // {c,d} == {u,v}: cannot happen
            std::vector<int> where;
            for (VertexId x : {a, b})
                if (x != c && x != d) where.push_back(comp.at(x));
            if (where.empty()) return false;
            for (int w : where)
                if (w == outside) return false;
            for (size_t i = 1; i < where.size(); ++i)
                if (where[i] != where[0]) return false;
            return true;
        };

        std::vector<std::pair<VertexId, VertexId>> maximal;
        for (auto& [a, b] : cands) {
            bool contained = false;
            for (auto& [c, d] : cands) {
                if (a == c && b == d) continue;
                auto comp = components_without(closed, {c, d});
                if (inside_component(a, b, c, d, comp)) {
                    contained = true;
                    break;
                }
            }
            if (!contained) maximal.push_back({a, b});
        }

        int nd = new_node(SpqrTree::R, u, v);
        std::set<VertexId> skelv{u, v};
        std::vector<bool> used(edges.size(), false);
        for (auto& [a, b] : maximal) {
            skelv.insert(a);
            skelv.insert(b);
            auto comp = components_without(closed, {a, b});
            int outside;
            if (a != u && b != u) outside = comp.at(u);
            else outside = comp.at(v);
            std::vector<Edge> inside;
            for (size_t i = 0; i < edges.size(); ++i) {
                const Edge& e = edges[i];
                bool direct = (e.tail == a && e.head == b) || (e.tail == b && e.head == a);
                bool in_comp = false;
                if (!direct) {
                    VertexId inner = (e.tail != a && e.tail != b) ? e.tail : e.head;
                    if (inner != a && inner != b) in_comp = comp.at(inner) != outside;
                }
                if (direct || in_comp) {
                    inside.push_back(e);
                    if (used[i]) throw std::logic_error("rigid components overlap");
                    used[i] = true;
                }
            }
            auto [ps, pt] = orient_poles(inside, a, b);
            int child = decompose(inside, ps, pt);
            tree.nodes[child].parent = nd;
            tree.nodes[nd].children.push_back(child);
            tree.nodes[nd].skel_edges.push_back({ps, pt, child});
        }
        for (bool b : used)
            if (!b) throw std::logic_error("rigid decomposition left an edge uncovered");
        tree.nodes[nd].skel_vertices.assign(skelv.begin(), skelv.end());
        tree.nodes[nd].skel_edges.push_back({u, v, -2});
        return nd;
    }
};

}  // namespace

int SpqrTree::lca(int a, int b) const {
    int fa = euler_first[a], fb = euler_first[b];
    if (fa > fb) std::swap(fa, fb);
    int len = fb - fa + 1;
    int lg = 0;
    while ((2 << lg) <= len) ++lg;
    int x = sparse[lg][fa];
    int y = sparse[lg][fb - (1 << lg) + 1];
    return euler_depth_seq[x] < euler_depth_seq[y] ? euler_node_seq[x] : euler_node_seq[y];
}

void SpqrTree::build_queries() {
    // Depths and Euler tour.
    euler_first.assign(nodes.size(), -1);
    euler_node_seq.clear();
    euler_depth_seq.clear();
    std::vector<std::pair<int, int>> stack{{root, 0}};
    std::vector<int> child_pos(nodes.size(), 0);
    nodes[root].depth = 0;
    while (!stack.empty()) {
        auto [nd, depth] = stack.back();
        nodes[nd].depth = depth;
        if (euler_first[nd] < 0) euler_first[nd] = (int)euler_node_seq.size();
        euler_node_seq.push_back(nd);
        euler_depth_seq.push_back(depth);
        if (child_pos[nd] < (int)nodes[nd].children.size()) {
            int c = nodes[nd].children[child_pos[nd]++];
            stack.push_back({c, depth + 1});
        } else {
            stack.pop_back();
        }
    }
    int M = (int)euler_node_seq.size();
    int LOG = 1;
    while ((1 << LOG) < M) ++LOG;
    sparse.assign(LOG + 1, std::vector<int>(M));
    std::iota(sparse[0].begin(), sparse[0].end(), 0);
    for (int l = 1; l <= LOG; ++l)
        for (int i = 0; i + (1 << l) <= M; ++i) {
            int x = sparse[l - 1][i], y = sparse[l - 1][i + (1 << (l - 1))];
            sparse[l][i] = euler_depth_seq[x] < euler_depth_seq[y] ? x : y;
        }

    // Pertinent sets, bottom-up.
    std::vector<int> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return nodes[a].depth > nodes[b].depth; });
    for (int nd : order) {
        auto& pert = nodes[nd].in_pertinent;
        pert.assign(graph_n, false);
        for (VertexId v : nodes[nd].skel_vertices) pert[v] = true;
        for (int c : nodes[nd].children)
            for (VertexId v = 0; v < graph_n; ++v)
                if (nodes[c].in_pertinent[v]) pert[v] = true;
    }

    // Proper allocation: lca over all nodes whose skeleton holds v.
    proper_alloc.assign(graph_n, -1);
    for (size_t nd = 0; nd < nodes.size(); ++nd)
        for (VertexId v : nodes[nd].skel_vertices)
            proper_alloc[v] = proper_alloc[v] < 0 ? (int)nd : lca(proper_alloc[v], (int)nd);
}

SpqrTree::Representative SpqrTree::representative(int nu, VertexId v) const {
    const Node& nd = nodes[nu];
    for (VertexId w : nd.skel_vertices)
        if (w == v) return {true, v, -1};
    for (size_t i = 0; i < nd.skel_edges.size(); ++i) {
        int c = nd.skel_edges[i].child;
        if (c >= 0 && nodes[c].in_pertinent[v]) return {false, -1, (int)i};
    }
    throw std::logic_error("representative: vertex not below this node");
}

SpqrTree build_spqr_tree(const StGraph& g) {
    if (g.graph.n < 2) throw std::invalid_argument("SPQR tree needs at least one edge");
    Builder b;
    b.tree.s = g.s;
    b.tree.t = g.t;
    b.tree.graph_n = g.graph.n;
    b.tree.added_ref_edge = !g.graph.has_edge(g.s, g.t);

    std::vector<Edge> C;
    for (const Edge& e : g.graph.edges)
        if (!(e.tail == g.s && e.head == g.t)) C.push_back(e);

    if (C.empty()) {
        // G is the single edge (s,t): the tree is a lone Q-node.
        int q = b.new_node(SpqrTree::Q, g.s, g.t);
        b.tree.nodes[q].q_edge = {g.s, g.t};
        b.tree.nodes[q].skel_vertices = {g.s, g.t};
        b.tree.nodes[q].skel_edges.push_back({g.s, g.t, -1});
        b.tree.root = q;
        b.tree.ref_q_node = q;
        b.tree.build_queries();
        return std::move(b.tree);
    }
    if (!is_connected(C)) throw std::logic_error("pertinent graph disconnected");

    int root = b.decompose(C, g.s, g.t);
    if (b.tree.nodes[root].kind == SpqrTree::Q) {
        // Wrap in a P-node so the reference edge has a sibling slot.
        int p = b.new_node(SpqrTree::P, g.s, g.t);
        b.tree.nodes[p].skel_vertices = {g.s, g.t};
        b.tree.nodes[p].skel_edges.push_back({g.s, g.t, root});
        b.tree.nodes[p].skel_edges.push_back({g.s, g.t, -2});
        b.tree.nodes[p].children.push_back(root);
        b.tree.nodes[root].parent = p;
        root = p;
    }
    int refq = b.new_node(SpqrTree::Q, g.s, g.t);
    b.tree.nodes[refq].q_edge = {g.s, g.t};
    b.tree.nodes[refq].skel_vertices = {g.s, g.t};
    b.tree.nodes[refq].skel_edges.push_back({g.s, g.t, -1});
    b.tree.nodes[refq].parent = root;
    b.tree.nodes[root].children.push_back(refq);
    for (auto& se : b.tree.nodes[root].skel_edges)
        if (se.child == -2) se.child = refq;
    b.tree.root = root;
    b.tree.ref_q_node = refq;
    b.tree.build_queries();
    return std::move(b.tree);
}

// ---------------------------------------------------------------------------
// Skeleton embeddings (R-nodes) and assembly
// ---------------------------------------------------------------------------

SkeletonEmbedding r_node_skeleton_embedding(const SpqrTree& tree, int nu) {
    const SpqrTree::Node& nd = tree.nodes[nu];
    SkeletonEmbedding se;
    se.local_to_global = nd.skel_vertices;
    se.global_to_local.assign(tree.graph_n, -1);
    for (size_t i = 0; i < se.local_to_global.size(); ++i)
        se.global_to_local[se.local_to_global[i]] = (int)i;
    int K = (int)se.local_to_global.size();

    using BoostGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                              boost::property<boost::edge_index_t, int>>;
    BoostGraph bg(K);
    for (size_t i = 0; i < nd.skel_edges.size(); ++i)
        boost::add_edge(se.global_to_local[nd.skel_edges[i].tail],
                        se.global_to_local[nd.skel_edges[i].head],
                        boost::property<boost::edge_index_t, int>((int)i), bg);
    using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<std::vector<EdgeDesc>> storage(K);
    auto emb_map =
        boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg, boost::boyer_myrvold_params::embedding = emb_map);
    if (!planar) throw std::invalid_argument("rigid skeleton is not planar");

    // The closing edge: the parent virtual edge, or the reference edge at
    // the root. It anchors the rotation of the poles so that it borders the
    // outer face.
    auto index_map = boost::get(boost::edge_index, bg);
    int closing = -1;
    for (size_t i = 0; i < nd.skel_edges.size(); ++i)
        if (nd.skel_edges[i].child == -2 || nd.skel_edges[i].child == tree.ref_q_node)
            closing = (int)i;

    se.out_edges.resize(K);
    se.in_edges.resize(K);
    for (int lv = 0; lv < K; ++lv) {
        VertexId gv = se.local_to_global[lv];
        std::vector<int> rot;
        for (const auto& ed : storage[lv]) rot.push_back(boost::get(index_map, ed));
        int deg = (int)rot.size();
        auto is_out = [&](int ei) { return nd.skel_edges[ei].tail == gv; };
        bool any_in = false, any_out = false;
        for (int ei : rot) (is_out(ei) ? any_out : any_in) = true;
        // Rotate so that outgoing edges form a prefix. All-out/all-in poles
        // anchor at the closing edge instead.
        int start = 0;
        if (any_in && any_out) {
            start = -1;
            for (int p = 0; p < deg; ++p)
                if (is_out(rot[p]) && !is_out(rot[(p - 1 + deg) % deg])) start = p;
            if (start < 0) throw std::invalid_argument("skeleton rotation not bimodal");
        } else if (closing >= 0) {
            for (int p = 0; p < deg; ++p)
                if (rot[p] == closing) start = any_out ? p : (p + 1) % deg;
        }
        bool seen_in = false;
        for (int p = 0; p < deg; ++p) {
            int ei = rot[(start + p) % deg];
            if (is_out(ei)) {
                if (seen_in) throw std::invalid_argument("skeleton rotation not bimodal");
                se.out_edges[lv].push_back(ei);
            } else {
                seen_in = true;
                se.in_edges[lv].push_back(ei);
            }
        }
        std::reverse(se.in_edges[lv].begin(), se.in_edges[lv].end());
    }
    return se;
}

SkeletonIndex build_skeleton_index(const SpqrTree& tree, int nu) {
    const SpqrTree::Node& nd = tree.nodes[nu];
    SkeletonIndex idx;
    idx.emb = r_node_skeleton_embedding(tree, nu);
    int K = (int)idx.emb.local_to_global.size();

    // Subdivide every non-parent skeleton edge with a dummy vertex so that
    // queries about virtual edges become vertex queries.
    DirectedGraph g;
    g.n = K;
    UpwardEmbedding emb;
    idx.edge_dummy.assign(nd.skel_edges.size(), -1);
    for (size_t i = 0; i < nd.skel_edges.size(); ++i)
        if (nd.skel_edges[i].child != -2) idx.edge_dummy[i] = g.n++;
    emb.succ.assign(g.n, {});
    emb.pred.assign(g.n, {});
    auto local = [&](VertexId gv) { return idx.emb.global_to_local[gv]; };
    for (size_t i = 0; i < nd.skel_edges.size(); ++i) {
        int lt = local(nd.skel_edges[i].tail), lh = local(nd.skel_edges[i].head);
        if (idx.edge_dummy[i] >= 0) {
            int d = idx.edge_dummy[i];
            g.edges.push_back({lt, d});
            g.edges.push_back({d, lh});
            emb.succ[d] = {lh};
            emb.pred[d] = {lt};
        } else {
            g.edges.push_back({lt, lh});
        }
    }
    for (int lv = 0; lv < K; ++lv) {
        for (int ei : idx.emb.out_edges[lv])
            emb.succ[lv].push_back(idx.edge_dummy[ei] >= 0 ? idx.edge_dummy[ei]
                                                           : local(tree.nodes[nu].skel_edges[ei].head));
        for (int ei : idx.emb.in_edges[lv])
            emb.pred[lv].push_back(idx.edge_dummy[ei] >= 0 ? idx.edge_dummy[ei]
                                                           : local(tree.nodes[nu].skel_edges[ei].tail));
    }
    StGraph st = make_st_graph(g);
    idx.dom = build_dominance_index(st, emb);
    return idx;
}

Relation SkeletonIndex::relation(const SpqrTree::Representative& a,
                                 const SpqrTree::Representative& b) const {
    auto node_of = [&](const SpqrTree::Representative& r) {
        if (r.is_vertex) return emb.global_to_local[r.v];
        return edge_dummy[r.skel_edge];
    };
    return dom.relation(node_of(a), node_of(b));
}

// ---------------------------------------------------------------------------
// Embedding assembly
// ---------------------------------------------------------------------------

namespace {

struct PartialEmb {
    std::map<VertexId, std::vector<VertexId>> succ, pred;
};

void append(std::vector<VertexId>& dst, const std::vector<VertexId>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

PartialEmb assemble_node(const SpqrTree& tree, int nu, const EmbeddingChoice& choice) {
    const SpqrTree::Node& nd = tree.nodes[nu];
    PartialEmb res;
    if (nd.kind == SpqrTree::Q) {
        res.succ[nd.q_edge.tail].push_back(nd.q_edge.head);
        res.pred[nd.q_edge.head].push_back(nd.q_edge.tail);
        return res;
    }
    std::vector<PartialEmb> kids(nd.children.size());
    std::map<int, int> child_slot;
    for (size_t i = 0; i < nd.children.size(); ++i) {
        kids[i] = assemble_node(tree, nd.children[i], choice);
        child_slot[nd.children[i]] = (int)i;
    }
    auto kid_of_edge = [&](int skel_edge) -> PartialEmb& {
        return kids[child_slot.at(nd.skel_edges[skel_edge].child)];
    };

    if (nd.kind == SpqrTree::S) {
        for (auto& k : kids) {
            for (auto& [v, l] : k.succ) append(res.succ[v], l);
            for (auto& [v, l] : k.pred) append(res.pred[v], l);
        }
        return res;
    }
    if (nd.kind == SpqrTree::P) {
        std::vector<int> order;
        auto it = choice.p_order.find(nu);
        if (it != choice.p_order.end()) {
            order = it->second;
        } else {
            for (size_t i = 0; i < nd.skel_edges.size(); ++i)
                if (nd.skel_edges[i].child >= 0) order.push_back((int)i);
        }
        for (int se : order) {
            PartialEmb& k = kid_of_edge(se);
            for (auto& [v, l] : k.succ) append(res.succ[v], l);
            for (auto& [v, l] : k.pred) append(res.pred[v], l);
        }
        return res;
    }
    // R-node: skeleton rotation, possibly flipped, with child embeddings
    // substituted for the virtual edges.
    SkeletonEmbedding se = r_node_skeleton_embedding(tree, nu);
    bool flip = false;
    auto it = choice.r_flip.find(nu);
    if (it != choice.r_flip.end()) flip = it->second;
    if (flip) {
        for (auto& l : se.out_edges) std::reverse(l.begin(), l.end());
        for (auto& l : se.in_edges) std::reverse(l.begin(), l.end());
    }
    for (size_t lv = 0; lv < se.local_to_global.size(); ++lv) {
        VertexId gv = se.local_to_global[lv];
        for (int ei : se.out_edges[lv]) {
            if (nd.skel_edges[ei].child == -2) continue;
            append(res.succ[gv], kid_of_edge(ei).succ[gv]);
        }
        for (int ei : se.in_edges[lv]) {
            if (nd.skel_edges[ei].child == -2) continue;
            append(res.pred[gv], kid_of_edge(ei).pred[gv]);
        }
    }
    for (auto& k : kids) {
        for (auto& [v, l] : k.succ)
            if (se.global_to_local[v] < 0) append(res.succ[v], l);
        for (auto& [v, l] : k.pred)
            if (se.global_to_local[v] < 0) append(res.pred[v], l);
    }
    return res;
}

}  // namespace

UpwardEmbedding assemble_embedding(const SpqrTree& tree, const EmbeddingChoice& choice) {
    PartialEmb pe = assemble_node(tree, tree.root, choice);
    UpwardEmbedding emb;
    emb.succ.assign(tree.graph_n, {});
    emb.pred.assign(tree.graph_n, {});
    for (auto& [v, l] : pe.succ) emb.succ[v] = l;
    for (auto& [v, l] : pe.pred) emb.pred[v] = l;
    if (tree.added_ref_edge) {
        auto& su = emb.succ[tree.s];
        su.erase(std::find(su.begin(), su.end(), tree.t));
        auto& pr = emb.pred[tree.t];
        pr.erase(std::find(pr.begin(), pr.end(), tree.s));
    }
    return emb;
}

// ---------------------------------------------------------------------------
// Variable-embedding solver and embedding enumeration
// ---------------------------------------------------------------------------

namespace {

bool planar_with_st_edge(const DirectedGraph& g, VertexId s, VertexId t) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(g.n);
    for (const Edge& e : g.edges) boost::add_edge(e.tail, e.head, bg);
    if (!g.has_edge(s, t)) boost::add_edge(s, t, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace

StUpeResult solve_st_upe(const UpeInstance& inst) {
    StGraph st0 = make_st_graph(inst.graph);
    if (inst.embedding) throw std::invalid_argument("solve_st_upe takes no fixed embedding");
    if (inst.graph.n == 1) return {Decision::Yes, UpwardEmbedding{{{}}, {{}}}};

    auto elim = eliminate_partial_edges(inst);
    const UpeInstance& work = elim.instance;
    if (!check_condition1(work)) return {Decision::No, std::nullopt};
    StGraph st = make_st_graph(work.graph);
    if (!planar_with_st_edge(work.graph, st.s, st.t)) return {Decision::No, std::nullopt};

    SpqrTree tree = build_spqr_tree(st);

    // Pinned vertices by increasing y, then x.
    std::vector<VertexId> pins(work.partial_vertices.begin(), work.partial_vertices.end());
    std::sort(pins.begin(), pins.end(), [&](VertexId a, VertexId b) {
        if (work.pos(a).y != work.pos(b).y) return work.pos(a).y < work.pos(b).y;
        return work.pos(a).x < work.pos(b).x;
    });

    std::map<int, std::vector<std::pair<int, int>>> lr_edges;  // P-node -> constraints
    std::map<int, std::pair<bool, bool>> r_flags;              // R-node -> (preserve, flip)
    std::map<int, SkeletonIndex> r_index;

    for (size_t i = 0; i + 1 < pins.size(); ++i) {
        VertexId u = pins[i], v = pins[i + 1];
        if (work.pos(u).y != work.pos(v).y) continue;
        if (u == st.s || u == st.t || v == st.s || v == st.t) return {Decision::No, std::nullopt};
        int nu = tree.lca(tree.proper_alloc[u], tree.proper_alloc[v]);
        const auto& node = tree.nodes[nu];
        if (node.kind == SpqrTree::S) return {Decision::No, std::nullopt};
        if (node.kind == SpqrTree::Q)
            throw std::logic_error("equal-y pair allocated at a Q-node after condition 1");
        auto ru = tree.representative(nu, u);
        auto rv = tree.representative(nu, v);
        if (node.kind == SpqrTree::P) {
            if (ru.is_vertex || rv.is_vertex)
                throw std::logic_error("P-node representative is a pole");
            lr_edges[nu].push_back({ru.skel_edge, rv.skel_edge});
        } else {
            auto it = r_index.find(nu);
            if (it == r_index.end()) it = r_index.emplace(nu, build_skeleton_index(tree, nu)).first;
            // u must end up left of v: query where u sits relative to v.
            Relation rel = it->second.relation(rv, ru);
            if (rel == Relation::Left) r_flags[nu].first = true;
            else if (rel == Relation::Right) r_flags[nu].second = true;
            else return {Decision::No, std::nullopt};
        }
    }

    EmbeddingChoice choice;
    for (auto& [nu, flags] : r_flags) {
        if (flags.first && flags.second) return {Decision::No, std::nullopt};
        choice.r_flip[nu] = flags.second;
    }
    for (auto& [nu, cons] : lr_edges) {
        // Topological order of the child edges under the constraints.
        std::vector<int> verts;
        for (size_t i = 0; i < tree.nodes[nu].skel_edges.size(); ++i)
            if (tree.nodes[nu].skel_edges[i].child >= 0) verts.push_back((int)i);
        std::map<int, std::vector<int>> adj;
        std::map<int, int> indeg;
        for (int v : verts) indeg[v] = 0;
        for (auto& [a, b] : cons) {
            adj[a].push_back(b);
            indeg[b]++;
        }
        std::vector<int> order;
        std::set<int> ready;
        for (int v : verts)
            if (indeg[v] == 0) ready.insert(v);
        while (!ready.empty()) {
            int v = *ready.begin();
            ready.erase(ready.begin());
            order.push_back(v);
            for (int w : adj[v])
                if (--indeg[w] == 0) ready.insert(w);
        }
        if (order.size() != verts.size()) return {Decision::No, std::nullopt};  // LR cycle
        choice.p_order[nu] = order;
    }

    UpwardEmbedding work_emb = assemble_embedding(tree, choice);

    // Map the embedding of the eliminated graph back onto the original one.
    UpwardEmbedding emb;
    emb.succ.assign(inst.graph.n, {});
    emb.pred.assign(inst.graph.n, {});
    for (VertexId v = 0; v < inst.graph.n; ++v) {
        for (VertexId w : work_emb.succ[v])
            emb.succ[v].push_back(w < inst.graph.n
                                      ? w
                                      : inst.graph.edges[elim.map.vertex_origin[w].original_edge].head);
        for (VertexId w : work_emb.pred[v])
            emb.pred[v].push_back(w < inst.graph.n
                                      ? w
                                      : inst.graph.edges[elim.map.vertex_origin[w].original_edge].tail);
    }

    UpeInstance with_emb = inst;
    with_emb.embedding = emb;
    if (solve_st_fue(with_emb) != Decision::Yes)
        throw std::logic_error("assembled embedding rejected by the fixed-embedding solver");
    return {Decision::Yes, emb};
}

std::vector<UpwardEmbedding> enumerate_upward_embeddings(const StGraph& g, size_t limit) {
    if (g.graph.n == 1) return {UpwardEmbedding{{{}}, {{}}}};
    SpqrTree tree = build_spqr_tree(g);
    std::vector<int> p_nodes, r_nodes;
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].kind == SpqrTree::P) p_nodes.push_back((int)i);
        if (tree.nodes[i].kind == SpqrTree::R) r_nodes.push_back((int)i);
    }
    std::set<std::pair<std::vector<std::vector<VertexId>>, std::vector<std::vector<VertexId>>>>
        seen;
    std::vector<UpwardEmbedding> out;
    EmbeddingChoice choice;

    std::function<void(size_t)> rec_r = [&](size_t ri) {
        if (out.size() >= limit) return;
        if (ri == r_nodes.size()) {
            UpwardEmbedding emb = assemble_embedding(tree, choice);
            // The choice vector fixes one handedness; the mirror image is an
            // upward embedding too.
            UpwardEmbedding mir = emb.flipped();
            if (seen.insert({emb.succ, emb.pred}).second) out.push_back(std::move(emb));
            if (seen.insert({mir.succ, mir.pred}).second) out.push_back(std::move(mir));
            return;
        }
        for (bool f : {false, true}) {
            choice.r_flip[r_nodes[ri]] = f;
            rec_r(ri + 1);
        }
    };
    std::function<void(size_t)> rec_p = [&](size_t pi) {
        if (out.size() >= limit) return;
        if (pi == p_nodes.size()) {
            rec_r(0);
            return;
        }
        int nu = p_nodes[pi];
        std::vector<int> edges;
        for (size_t i = 0; i < tree.nodes[nu].skel_edges.size(); ++i)
            if (tree.nodes[nu].skel_edges[i].child >= 0) edges.push_back((int)i);
        std::sort(edges.begin(), edges.end());
        do {
            choice.p_order[nu] = edges;
            rec_p(pi + 1);
        } while (std::next_permutation(edges.begin(), edges.end()) && out.size() < limit);
    };
    rec_p(0);
    return out;
}

}  // namespace upex
