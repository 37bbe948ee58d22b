#include "upex/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <functional>
#include <set>
#include <stdexcept>

namespace upex {

namespace {

int class_count(const Certificate& cert) {
    int k = 0;
    for (int c : cert.y_class) k = std::max(k, c + 1);
    return k;
}

// Edge crosses the line of class i strictly.
bool edge_crosses(const Certificate& cert, const Edge& e, int i) {
    int a = cert.y_class[e.tail], b = cert.y_class[e.head];
    return (a < i && i < b) || (b < i && i < a);
}

void check_well_formed(const UpeInstance& inst, const Certificate& cert) {
    const DirectedGraph& g = inst.graph;
    if ((int)cert.y_class.size() != g.n)
        throw std::invalid_argument("certificate: y assignment size mismatch");
    int k = class_count(cert);
    std::vector<int> count(k, 0);
    for (int c : cert.y_class) {
        if (c < 0 || c >= k) throw std::invalid_argument("certificate: class out of range");
        count[c]++;
    }
    for (int c : count)
        if (c == 0) throw std::invalid_argument("certificate: empty class");
    if ((int)cert.sigma.size() != k) throw std::invalid_argument("certificate: sigma size mismatch");
    for (int i = 0; i < k; ++i) {
        std::set<std::pair<bool, int>> want;
        for (VertexId v = 0; v < g.n; ++v)
            if (cert.y_class[v] == i) want.insert({true, v});
        for (size_t ei = 0; ei < g.edges.size(); ++ei)
            if (edge_crosses(cert, g.edges[ei], i)) want.insert({false, (int)ei});
        std::set<std::pair<bool, int>> have;
        for (const CertElem& el : cert.sigma[i])
            if (!have.insert({el.is_vertex, el.id}).second)
                throw std::invalid_argument("certificate: duplicate element in sigma");
        if (have != want)
            throw std::invalid_argument("certificate: sigma " + std::to_string(i) +
                                        " does not list the line's vertices and crossing edges");
    }
}

int pos_in_sigma(const std::vector<CertElem>& sigma, const CertElem& el) {
    for (size_t p = 0; p < sigma.size(); ++p)
        if (sigma[p] == el) return (int)p;
    return -1;
}

// Representative of a spanning edge on the line of class i: the edge
// itself when it crosses the line, its endpoint when it starts or ends
// there.
CertElem rep_on_line(const Certificate& cert, const DirectedGraph& g, int ei, int i) {
    const Edge& e = g.edges[ei];
    if (cert.y_class[e.tail] == i) return {true, e.tail};
    if (cert.y_class[e.head] == i) return {true, e.head};
    return {false, ei};
}

}  // namespace

CheckResult check_certificate(const UpeInstance& inst, const Certificate& cert) {
    const DirectedGraph& g = inst.graph;
    check_well_formed(inst, cert);
    int k = class_count(cert);

    // Check 1: edges ascend through the classes.
    for (const Edge& e : g.edges)
        if (!(cert.y_class[e.tail] < cert.y_class[e.head]))
            return {false, 1, "edge does not ascend"};

    // Check 2: edges spanning two consecutive lines keep their order.
    for (int i = 0; i + 1 < k; ++i) {
        std::vector<int> spanning;
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            const Edge& e = g.edges[ei];
            if (cert.y_class[e.tail] <= i && cert.y_class[e.head] >= i + 1) spanning.push_back((int)ei);
        }
        for (size_t a = 0; a < spanning.size(); ++a) {
            for (size_t b = a + 1; b < spanning.size(); ++b) {
                CertElem ra = rep_on_line(cert, g, spanning[a], i);
                CertElem rb = rep_on_line(cert, g, spanning[b], i);
                CertElem ua = rep_on_line(cert, g, spanning[a], i + 1);
                CertElem ub = rep_on_line(cert, g, spanning[b], i + 1);
                if (ra == rb || ua == ub) continue;  // common endpoint: no constraint
                bool below = pos_in_sigma(cert.sigma[i], ra) < pos_in_sigma(cert.sigma[i], rb);
                bool above = pos_in_sigma(cert.sigma[i + 1], ua) < pos_in_sigma(cert.sigma[i + 1], ub);
                if (below != above) return {false, 2, "spanning edges swap order"};
            }
        }
    }

    // Checks 3 and 4: class order consistent with pinned heights.
    for (VertexId u : inst.partial_vertices) {
        for (VertexId v : inst.partial_vertices) {
            if (u >= v) continue;
            int cu = cert.y_class[u], cv = cert.y_class[v];
            const Rat& yu = inst.pos(u).y;
            const Rat& yv = inst.pos(v).y;
            if (cu < cv && !(yu < yv)) return {false, 3, "class order contradicts pinned y order"};
            if (cv < cu && !(yv < yu)) return {false, 3, "class order contradicts pinned y order"};
            if (cu == cv && yu != yv) return {false, 4, "same class, different pinned y"};
        }
    }

    // Check 5: within a line, pinned vertices keep their x order.
    for (int i = 0; i < k; ++i) {
        const auto& sig = cert.sigma[i];
        for (size_t a = 0; a < sig.size(); ++a) {
            if (!sig[a].is_vertex || !inst.pinned(sig[a].id)) continue;
            for (size_t b = a + 1; b < sig.size(); ++b) {
                if (!sig[b].is_vertex || !inst.pinned(sig[b].id)) continue;
                if (!(inst.pos(sig[a].id).x < inst.pos(sig[b].id).x))
                    return {false, 5, "pinned vertices out of x order"};
            }
        }
    }

    // Checks 6 and 7: pinned vertices versus H-edge crossings, and H-edge
    // crossings among themselves, ordered by the exact crossing points.
    for (int i = 0; i < k; ++i) {
        const auto& sig = cert.sigma[i];
        for (size_t a = 0; a < sig.size(); ++a) {
            if (!sig[a].is_vertex || !inst.pinned(sig[a].id)) continue;
            const Point& pu = inst.pos(sig[a].id);
            std::vector<std::pair<size_t, Rat>> h_crossings;
            for (size_t b = 0; b < sig.size(); ++b) {
                if (sig[b].is_vertex) continue;
                const Edge& e = g.edges[sig[b].id];
                if (!inst.pinned_edge(e)) continue;
                h_crossings.push_back({b, polyline_x_at(inst.drawing.edge_routes.at(e), pu.y)});
            }
            for (const auto& [b, cx] : h_crossings) {
                bool sigma_before = b < a;
                bool geo_before = cx < pu.x;
                if (sigma_before != geo_before)
                    return {false, 6, "H-edge crossing on the wrong side of a pinned vertex"};
            }
            for (size_t p = 0; p < h_crossings.size(); ++p)
                for (size_t q = p + 1; q < h_crossings.size(); ++q) {
                    bool sigma_before = h_crossings[p].first < h_crossings[q].first;
                    bool geo_before = h_crossings[p].second < h_crossings[q].second;
                    if (sigma_before != geo_before)
                        return {false, 7, "H-edge crossings out of geometric order"};
                }
        }
    }

    // Embedding consistency: the sigma-derived rotation at each vertex must
    // match the prescribed lists.
    if (inst.embedding) {
        auto out = g.out_edges();
        auto in = g.in_edges();
        for (VertexId v = 0; v < g.n; ++v) {
            int i = cert.y_class[v];
            std::vector<std::pair<int, VertexId>> su;
            for (int ei : out[v])
                su.push_back({pos_in_sigma(cert.sigma[i + 1], rep_on_line(cert, g, ei, i + 1)),
                              g.edges[ei].head});
            std::sort(su.begin(), su.end());
            std::vector<VertexId> got;
            for (auto& [p, w] : su) got.push_back(w);
            if (got != inst.embedding->succ[v]) return {false, 8, "successor rotation mismatch"};
            std::vector<std::pair<int, VertexId>> pr;
            for (int ei : in[v])
                pr.push_back({pos_in_sigma(cert.sigma[i - 1], rep_on_line(cert, g, ei, i - 1)),
                              g.edges[ei].tail});
            std::sort(pr.begin(), pr.end());
            got.clear();
            for (auto& [p, w] : pr) got.push_back(w);
            if (got != inst.embedding->pred[v]) return {false, 8, "predecessor rotation mismatch"};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

namespace {

// Given elements in their final left-to-right order, some with fixed x,
// assigns x values to the free ones. Fixed values must already ascend.
std::vector<Rat> assign_positions(const std::vector<std::optional<Rat>>& fixed) {
    size_t n = fixed.size();
    std::vector<Rat> xs(n);
    size_t i = 0;
    Rat prev;           // last assigned value
    bool has_prev = false;
    while (i < n) {
        if (fixed[i]) {
            if (has_prev && !(prev < *fixed[i]))
                throw std::logic_error("materialize: fixed x values out of order");
            xs[i] = *fixed[i];
            prev = xs[i];
            has_prev = true;
            ++i;
            continue;
        }
        size_t j = i;
        while (j < n && !fixed[j]) ++j;
        size_t cnt = j - i;
        if (j < n) {
            Rat hi = *fixed[j];
            Rat lo = has_prev ? prev : hi - Rat((long)cnt + 1);
            if (!(lo < hi)) throw std::logic_error("materialize: fixed x values out of order");
            for (size_t t = 0; t < cnt; ++t)
                xs[i + t] = lo + (hi - lo) * Rat((long)t + 1) / Rat((long)cnt + 1);
        } else {
            Rat lo = has_prev ? prev : Rat(-1);
            for (size_t t = 0; t < cnt; ++t) xs[i + t] = lo + Rat((long)t + 1);
        }
        prev = xs[j - 1];
        has_prev = true;
        i = j;
    }
    return xs;
}

}  // namespace

FullDrawing materialize_certificate(const UpeInstance& inst, const Certificate& cert) {
    const DirectedGraph& g = inst.graph;
    int k = class_count(cert);

    // Heights: pinned classes sit on their pinned line; free classes spread
    // through the gaps.
    std::vector<std::optional<Rat>> class_y(k);
    for (VertexId v : inst.partial_vertices) class_y[cert.y_class[v]] = inst.pos(v).y;
    {
        int i = 0;
        while (i < k) {
            if (class_y[i]) {
                ++i;
                continue;
            }
            int j = i;
            while (j < k && !class_y[j]) ++j;
            int cnt = j - i;
            if (i == 0 && j == k) {
                for (int t = 0; t < cnt; ++t) class_y[t] = Rat(t);
            } else if (i == 0) {
                for (int t = 0; t < cnt; ++t) class_y[i + t] = *class_y[j] - Rat(cnt - t);
            } else if (j == k) {
                for (int t = 0; t < cnt; ++t) class_y[i + t] = *class_y[i - 1] + Rat(t + 1);
            } else {
                Rat lo = *class_y[i - 1], hi = *class_y[j];
                for (int t = 0; t < cnt; ++t)
                    class_y[i + t] = lo + (hi - lo) * Rat(t + 1) / Rat(cnt + 1);
            }
            i = j;
        }
    }

    // Per class line: x for every sigma element.
    std::vector<std::map<std::pair<bool, int>, Rat>> line_x(k);
    for (int i = 0; i < k; ++i) {
        const auto& sig = cert.sigma[i];
        std::vector<std::optional<Rat>> fixed(sig.size());
        for (size_t p = 0; p < sig.size(); ++p) {
            if (sig[p].is_vertex && inst.pinned(sig[p].id)) {
                fixed[p] = inst.pos(sig[p].id).x;
            } else if (!sig[p].is_vertex && inst.pinned_edge(g.edges[sig[p].id])) {
                fixed[p] = polyline_x_at(inst.drawing.edge_routes.at(g.edges[sig[p].id]), *class_y[i]);
            }
        }
        std::vector<Rat> xs = assign_positions(fixed);
        for (size_t p = 0; p < sig.size(); ++p) line_x[i][{sig[p].is_vertex, sig[p].id}] = xs[p];
    }

    FullDrawing d;
    d.vertex_pos.resize(g.n);
    for (VertexId v = 0; v < g.n; ++v)
        d.vertex_pos[v] = inst.pinned(v)
                              ? inst.pos(v)
                              : Point{line_x[cert.y_class[v]].at({true, v}), *class_y[cert.y_class[v]]};

    // Strip refinement: bends of H-routes introduce extra horizontal lines
    // so that pinned routes are straight between consecutive lines. On each
    // such line the spanning elements keep their strip order.
    struct StripLine {
        Rat y;
        std::map<int, Rat> edge_x;  // per crossing edge index
    };
    std::vector<std::vector<StripLine>> strip_lines(std::max(0, k - 1));
    for (int i = 0; i + 1 < k; ++i) {
        std::set<Rat> ys;
        for (const auto& [e, r] : inst.drawing.edge_routes)
            for (size_t t = 1; t + 1 < r.size(); ++t)
                if (*class_y[i] < r[t].y && r[t].y < *class_y[i + 1]) ys.insert(r[t].y);
        if (ys.empty()) continue;

        // Spanning edges in strip order: by bottom representative position,
        // fan-outs resolved by the top position.
        std::vector<std::pair<std::pair<int, int>, int>> ordered;
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            const Edge& e = g.edges[ei];
            if (cert.y_class[e.tail] <= i && cert.y_class[e.head] >= i + 1) {
                int pb = pos_in_sigma(cert.sigma[i], rep_on_line(cert, g, (int)ei, i));
                int pt = pos_in_sigma(cert.sigma[i + 1], rep_on_line(cert, g, (int)ei, i + 1));
                ordered.push_back({{pb, pt}, (int)ei});
            }
        }
        std::sort(ordered.begin(), ordered.end());
        for (const Rat& y : ys) {
            StripLine sl;
            sl.y = y;
            std::vector<std::optional<Rat>> fixed(ordered.size());
            for (size_t p = 0; p < ordered.size(); ++p) {
                const Edge& e = g.edges[ordered[p].second];
                if (inst.pinned_edge(e))
                    fixed[p] = polyline_x_at(inst.drawing.edge_routes.at(e), y);
            }
            std::vector<Rat> xs = assign_positions(fixed);
            for (size_t p = 0; p < ordered.size(); ++p) sl.edge_x[ordered[p].second] = xs[p];
            strip_lines[i].push_back(std::move(sl));
        }
    }

    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        const Edge& e = g.edges[ei];
        if (inst.pinned_edge(e)) {
            d.edge_routes[e] = inst.drawing.edge_routes.at(e);
            continue;
        }
        Polyline r;
        r.push_back(d.vertex_pos[e.tail]);
        for (int i = cert.y_class[e.tail]; i < cert.y_class[e.head]; ++i) {
            if (i > cert.y_class[e.tail]) r.push_back(Point{line_x[i].at({false, (int)ei}), *class_y[i]});
            for (const StripLine& sl : strip_lines[i]) r.push_back(Point{sl.edge_x.at((int)ei), sl.y});
        }
        r.push_back(d.vertex_pos[e.head]);
        d.edge_routes[e] = std::move(r);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

// Shared sweep context for one instance.
struct Enumerator {
    const UpeInstance& inst;
    const DirectedGraph& g;
    bool fue;
    std::vector<std::vector<int>> out, in;

    // Pinned vertices grouped by ascending y.
    std::vector<std::vector<VertexId>> pin_groups;
    std::vector<Rat> group_y;
    std::vector<int> group_of;  // per vertex, -1 if unpinned

    Certificate found;
    bool have = false;

    explicit Enumerator(const UpeInstance& i)
        : inst(i), g(i.graph), fue(i.embedding.has_value()), out(g.out_edges()), in(g.in_edges()) {
        std::map<Rat, std::vector<VertexId>> by_y;
        for (VertexId v : inst.partial_vertices) by_y[inst.pos(v).y].push_back(v);
        group_of.assign(g.n, -1);
        for (auto& [y, vs] : by_y) {
            for (VertexId v : vs) group_of[v] = (int)pin_groups.size();
            pin_groups.push_back(vs);
            group_y.push_back(y);
        }
    }

    // ---- Y enumeration: ordered set partitions respecting the pinned
    // group structure and edge ascent. ----
    std::vector<std::vector<VertexId>> classes;
    std::vector<int> class_pos;  // per vertex: index into classes, -1 unplaced

    bool edges_ok_with(VertexId v, int ci) const {
        for (int ei : out[v]) {
            VertexId w = g.edges[ei].head;
            if (class_pos[w] >= 0 && !(ci < class_pos[w])) return false;
        }
        for (int ei : in[v]) {
            VertexId u = g.edges[ei].tail;
            if (class_pos[u] >= 0 && !(class_pos[u] < ci)) return false;
        }
        return true;
    }

    void place(size_t idx, const std::vector<VertexId>& order) {
        if (have) return;
        if (idx == order.size()) {
            run_sigma();
            return;
        }
        VertexId v = order[idx];
        int grp = group_of[v];
        if (grp >= 0) {
            // First member creates the group's class at the end; later
            // members join it.
            bool first = true;
            for (VertexId u : pin_groups[grp])
                if (class_pos[u] >= 0) first = false;
            if (!first) {
                int ci = -1;
                for (VertexId u : pin_groups[grp])
                    if (class_pos[u] >= 0) ci = class_pos[u];
                if (!edges_ok_with(v, ci)) return;
                classes[ci].push_back(v);
                class_pos[v] = ci;
                place(idx + 1, order);
                class_pos[v] = -1;
                classes[ci].pop_back();
            } else {
                int ci = (int)classes.size();
                classes.push_back({v});
                class_pos[v] = ci;
                if (edges_ok_with(v, ci)) place(idx + 1, order);
                class_pos[v] = -1;
                classes.pop_back();
            }
            return;
        }
        // Unpinned: join any class or open a new one anywhere.
        for (int ci = 0; ci <= (int)classes.size() && !have; ++ci) {
            // New class inserted before position ci.
            classes.insert(classes.begin() + ci, {v});
            for (VertexId u = 0; u < g.n; ++u)
                if (u != v && class_pos[u] >= ci) class_pos[u]++;
            class_pos[v] = ci;
            if (edges_ok_with(v, ci)) place(idx + 1, order);
            class_pos[v] = -1;
            for (VertexId u = 0; u < g.n; ++u)
                if (u != v && class_pos[u] > ci) class_pos[u]--;
            classes.erase(classes.begin() + ci);
        }
        for (int ci = 0; ci < (int)classes.size() && !have; ++ci) {
            if (!edges_ok_with(v, ci)) continue;
            classes[ci].push_back(v);
            class_pos[v] = ci;
            place(idx + 1, order);
            class_pos[v] = -1;
            classes[ci].pop_back();
        }
    }

    // ---- sigma enumeration over a fixed Y ----
    int k = 0;
    std::vector<int> vclass;
    std::vector<std::vector<CertElem>> sigma;

    // Forced left-to-right chain of H-elements on each line.
    std::vector<std::vector<CertElem>> forced;

    bool build_forced() {
        forced.assign(k, {});
        // Heights at which geometric order is evaluated, per class.
        std::vector<Rat> probe(k);
        std::vector<bool> probed(k, false);
        for (int i = 0; i < k; ++i) {
            Rat lo, hi;
            bool has_lo = false, has_hi = false;
            for (VertexId v : inst.partial_vertices) {
                if (vclass[v] == i) {
                    probe[i] = inst.pos(v).y;
                    probed[i] = true;
                }
                if (vclass[v] < i && (!has_lo || inst.pos(v).y > lo)) lo = inst.pos(v).y, has_lo = true;
                if (vclass[v] > i && (!has_hi || inst.pos(v).y < hi)) hi = inst.pos(v).y, has_hi = true;
            }
            if (!probed[i] && has_lo && has_hi) {
                probe[i] = (lo + hi) / 2;
                probed[i] = true;
            }
            struct FElem {
                Rat x;
                CertElem el;
            };
            std::vector<FElem> felems;
            for (VertexId v : inst.partial_vertices)
                if (vclass[v] == i) felems.push_back({inst.pos(v).x, {true, v}});
            for (size_t ei = 0; ei < g.edges.size(); ++ei) {
                const Edge& e = g.edges[ei];
                if (!inst.pinned_edge(e)) continue;
                if (vclass[e.tail] < i && i < vclass[e.head]) {
                    assert(probed[i]);
                    felems.push_back(
                        {polyline_x_at(inst.drawing.edge_routes.at(e), probe[i]), {false, (int)ei}});
                }
            }
            std::sort(felems.begin(), felems.end(), [](const FElem& a, const FElem& b) {
                if (a.x != b.x) return a.x < b.x;
                return false;
            });
            for (size_t p = 1; p < felems.size(); ++p)
                if (felems[p - 1].x == felems[p].x) return false;  // touching H geometry
            for (const FElem& f : felems) forced[i].push_back(f.el);
        }
        return true;
    }

    // Anchor positions of a line-i element in sigma[i-1].
    std::vector<int> anchors_of(const CertElem& el, int i) const {
        std::vector<int> a;
        if (el.is_vertex) {
            for (int ei : in[el.id]) {
                CertElem rep = rep_on_line_local(ei, i - 1);
                a.push_back(pos_in_sigma(sigma[i - 1], rep));
            }
        } else {
            a.push_back(pos_in_sigma(sigma[i - 1], rep_on_line_local(el.id, i - 1)));
        }
        std::sort(a.begin(), a.end());
        return a;
    }

    CertElem rep_on_line_local(int ei, int i) const {
        const Edge& e = g.edges[ei];
        if (vclass[e.tail] == i) return {true, e.tail};
        if (vclass[e.head] == i) return {true, e.head};
        return {false, ei};
    }

    bool run_line(int i) {
        if (have) return true;
        if (i == k) {
            Certificate cert{vclass, sigma};
            found = std::move(cert);
            have = true;
            return true;
        }

        // Elements of this line.
        std::vector<CertElem> elems;
        for (VertexId v = 0; v < g.n; ++v)
            if (vclass[v] == i) elems.push_back({true, v});
        for (size_t ei = 0; ei < g.edges.size(); ++ei)
            if (vclass[g.edges[ei].tail] < i && i < vclass[g.edges[ei].head])
                elems.push_back({false, (int)ei});
        size_t n_el = elems.size();

        // FUE: predecessor rotation of every vertex on this line is already
        // determined by sigma[i-1]; reject incompatible prefixes.
        if (fue && i > 0) {
            for (VertexId v = 0; v < g.n; ++v) {
                if (vclass[v] != i || in[v].empty()) continue;
                std::vector<std::pair<int, VertexId>> pr;
                for (int ei : in[v])
                    pr.push_back({pos_in_sigma(sigma[i - 1], rep_on_line_local(ei, i - 1)),
                                  g.edges[ei].tail});
                std::sort(pr.begin(), pr.end());
                std::vector<VertexId> got;
                for (auto& [p, w] : pr) got.push_back(w);
                if (got != inst.embedding->pred[v]) return false;
            }
        }

        // Precedence: anchor intervals from the previous line.
        std::vector<std::vector<int>> anchor(n_el);
        if (i > 0)
            for (size_t a = 0; a < n_el; ++a) anchor[a] = anchors_of(elems[a], i);

        auto must_precede = std::vector<std::vector<bool>>(n_el, std::vector<bool>(n_el, false));
        for (size_t a = 0; a < n_el; ++a) {
            for (size_t b = 0; b < n_el; ++b) {
                if (a == b || anchor[a].empty() || anchor[b].empty()) continue;
                bool ab = anchor[a].back() <= anchor[b].front();  // a may precede b
                bool ba = anchor[b].back() <= anchor[a].front();
                if (!ab && !ba) return false;  // interleaved strands
                if (ab && !ba) must_precede[a][b] = true;
            }
        }
        // Forced H order.
        for (size_t p = 0; p + 1 < forced[i].size(); ++p) {
            int a = -1, b = -1;
            for (size_t t = 0; t < n_el; ++t) {
                if (elems[t] == forced[i][p]) a = (int)t;
                if (elems[t] == forced[i][p + 1]) b = (int)t;
            }
            must_precede[a][b] = true;
        }
        // FUE: successor rotations of the previous line impose chains here.
        if (fue && i > 0) {
            for (VertexId v = 0; v < g.n; ++v) {
                if (vclass[v] != i - 1) continue;
                const auto& su = inst.embedding->succ[v];
                for (size_t t = 0; t + 1 < su.size(); ++t) {
                    int e1 = g.edge_index(v, su[t]);
                    int e2 = g.edge_index(v, su[t + 1]);
                    CertElem r1 = rep_on_line_local(e1, i);
                    CertElem r2 = rep_on_line_local(e2, i);
                    int a = -1, b = -1;
                    for (size_t q = 0; q < n_el; ++q) {
                        if (elems[q] == r1) a = (int)q;
                        if (elems[q] == r2) b = (int)q;
                    }
                    if (a >= 0 && b >= 0) must_precede[a][b] = true;
                }
            }
        }

        // Enumerate linear extensions.
        std::vector<bool> used(n_el, false);
        std::vector<CertElem> line;
        line.reserve(n_el);

        std::function<bool(void)> extend = [&]() -> bool {
            if (have) return true;
            if (line.size() == n_el) {
                sigma.push_back(line);
                run_line(i + 1);
                sigma.pop_back();
                return have;
            }
            for (size_t c = 0; c < n_el; ++c) {
                if (used[c]) continue;
                bool ok = true;
                for (size_t o = 0; o < n_el && ok; ++o)
                    if (!used[o] && o != c && must_precede[o][c]) ok = false;
                if (!ok) continue;
                used[c] = true;
                line.push_back(elems[c]);
                extend();
                line.pop_back();
                used[c] = false;
                if (have) return true;
            }
            return have;
        };
        extend();
        return have;
    }

    void run_sigma() {
        k = (int)classes.size();
        vclass.assign(g.n, -1);
        for (int i = 0; i < k; ++i)
            for (VertexId v : classes[i]) vclass[v] = i;
        if (!build_forced()) return;
        sigma.clear();
        run_line(0);
    }

    bool run() {
        std::vector<VertexId> order;
        // Pinned first (by ascending group), then the rest.
        for (const auto& grp : pin_groups)
            for (VertexId v : grp) order.push_back(v);
        for (VertexId v = 0; v < g.n; ++v)
            if (group_of[v] < 0) order.push_back(v);
        classes.clear();
        class_pos.assign(g.n, -1);
        place(0, order);
        return have;
    }
};

}  // namespace

OracleResult brute_force_decide(const UpeInstance& inst, const OracleOptions& opt) {
    if (inst.graph.n > opt.cap)
        throw std::runtime_error("oracle: instance exceeds the vertex cap (" +
                                 std::to_string(opt.cap) + ")");
    OracleResult res;
    if (inst.graph.n == 0) {
        res.decision = Decision::Yes;
        res.certificate = Certificate{};
        if (opt.materialize) res.witness = FullDrawing{};
        return res;
    }
    Enumerator en(inst);
    if (!en.run()) {
        res.decision = Decision::No;
        return res;
    }
    res.decision = Decision::Yes;
    res.certificate = en.found;
    CheckResult cc = check_certificate(inst, en.found);
    if (!cc.pass)
        throw std::logic_error("oracle: enumerated certificate fails check " +
                               std::to_string(cc.failed_check) + " (" + cc.detail + ")");
    if (opt.materialize) {
        FullDrawing d = materialize_certificate(inst, en.found);
        VerifyResult vr = verify_drawing(inst, d);
        if (!vr.accepted())
            throw std::logic_error("oracle: materialized witness rejected: " + vr.reason);
        res.witness = std::move(d);
    }
    return res;
}

}  // namespace upex
