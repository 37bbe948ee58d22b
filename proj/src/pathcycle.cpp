#include "upex/pathcycle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace upex {

namespace {

// Vertex sequence of a simple path or cycle, by undirected traversal.
std::vector<VertexId> trace_sequence(const DirectedGraph& g, bool& is_cycle) {
    int n = g.n;
    std::vector<std::vector<VertexId>> adj(n);
    for (const Edge& e : g.edges) {
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    int deg1 = 0;
    VertexId start = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (adj[v].size() == 1) {
            if (deg1 == 0) start = v;
            ++deg1;
        } else if (adj[v].size() != 2) {
            throw std::invalid_argument("graph is not a simple path or cycle");
        }
    }
    if (deg1 == 2 && (int)g.edges.size() == n - 1) {
        is_cycle = false;
    } else if (deg1 == 0 && (int)g.edges.size() == n && n >= 3) {
        is_cycle = true;
    } else {
        throw std::invalid_argument("graph is not a simple path or cycle");
    }
    std::vector<VertexId> seq{start};
    std::vector<bool> seen(n, false);
    seen[start] = true;
    while ((int)seq.size() < n) {
        bool advanced = false;
        for (VertexId w : adj[seq.back()]) {
            if (!seen[w]) {
                seq.push_back(w);
                seen[w] = true;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::invalid_argument("graph is not connected");
    }
    return seq;
}

}  // namespace

MonotoneRunPartition partition_monotone_runs(const DirectedGraph& g) {
    MonotoneRunPartition part;
    if (g.n == 0) return part;
    if (g.n == 1) {
        part.runs.push_back({0});
        return part;
    }
    std::vector<VertexId> seq = trace_sequence(g, part.is_cycle);
    int n = g.n;
    int m = part.is_cycle ? n : n - 1;
    auto forward = [&](int k) { return g.has_edge(seq[k], seq[(k + 1) % n]); };

    int first_flip = -1;
    for (int k = 0; k + 1 < m; ++k)
        if (forward(k) != forward(k + 1)) {
            first_flip = k + 1;
            break;
        }
    if (part.is_cycle && first_flip < 0 && forward(m - 1) == forward(0)) {
        // Directed cycle: a single degenerate run around the whole cycle.
        part.runs.push_back(seq);
        return part;
    }
    if (part.is_cycle) {
        // Rotate so that the sequence starts at a junction.
        int shift = first_flip >= 0 ? first_flip : 0;
        if (forward(m - 1) != forward(0)) shift = 0;
        std::rotate(seq.begin(), seq.begin() + shift, seq.end());
    }
    std::vector<VertexId> run{seq[0]};
    for (int k = 0; k < m; ++k) {
        int cur = k, nxt = (k + 1) % n;
        run.push_back(seq[nxt]);
        bool last = k == m - 1;
        bool flips = !last && (g.has_edge(seq[cur], seq[nxt]) !=
                               g.has_edge(seq[nxt], seq[(k + 2) % n]));
        if (last || flips) {
            part.runs.push_back(run);
            run = {seq[nxt]};
        }
    }
    return part;
}

namespace {
int g_dp_size_cap = 256;
}  // namespace

int dp_size_cap() { return g_dp_size_cap; }
void set_dp_size_cap(int cap) { g_dp_size_cap = cap; }

DpTable::DpTable(int n) : n_(n) {
    if (n > dp_size_cap()) throw std::invalid_argument("dp table exceeds the size cap");
    bits_.assign((size_t)n * n * n * n, false);
    wild_.assign(4, std::vector<bool>((size_t)n * n, false));
}

void DpTable::refresh_wildcards(int lo, int hi) {
    bool a = false, b = false, c = false, d = false;
    for (int x = lo; x <= hi; ++x) {
        a |= x != hi && get(lo, hi, hi, x);  // min at right end
        b |= x != hi && get(lo, hi, x, hi);  // max at right end
        c |= x != lo && get(lo, hi, lo, x);  // min at left end
        d |= x != lo && get(lo, hi, x, lo);  // max at left end
    }
    wild_[0][lo * n_ + hi] = a;
    wild_[1][lo * n_ + hi] = b;
    wild_[2][lo * n_ + hi] = c;
    wild_[3][lo * n_ + hi] = d;
}

namespace {

// Everything the fill needs about one position sequence.
struct DpInput {
    int n = 0;
    std::vector<bool> fwd;                  // edge between k and k+1 points forward
    std::vector<std::optional<Rat>> pin;    // pinned height per position
    std::vector<int> s_aligned;             // +1 S=[prev,next], -1 reversed, 0 n/a
    std::vector<int> p_aligned;
};

// Pinned-extreme test: the entry's extreme vertex is free, or it carries
// the extreme pinned height of the interval.
struct PinRanges {
    const DpInput& in;
    // min/max pinned height per interval, as position of the pinned vertex
    // (-1 when the interval has no pins). O(n^2) prefix construction.
    std::vector<int> min_pos, max_pos;

    explicit PinRanges(const DpInput& input) : in(input) {
        int n = in.n;
        min_pos.assign((size_t)n * n, -1);
        max_pos.assign((size_t)n * n, -1);
        for (int i = 0; i < n; ++i) {
            int mn = -1, mx = -1;
            for (int j = i; j < n; ++j) {
                if (in.pin[j]) {
                    if (mn < 0 || *in.pin[j] < *in.pin[mn]) mn = j;
                    if (mx < 0 || *in.pin[j] > *in.pin[mx]) mx = j;
                }
                min_pos[(size_t)i * n + j] = mn;
                max_pos[(size_t)i * n + j] = mx;
            }
        }
    }
    bool min_ok(int v, int i, int j) const {
        if (!in.pin[v]) return true;
        return min_pos[(size_t)i * in.n + j] == v;
    }
    bool max_ok(int v, int i, int j) const {
        if (!in.pin[v]) return true;
        return max_pos[(size_t)i * in.n + j] == v;
    }
};

// Fills entries with j-i <= max_len.
std::shared_ptr<DpTable> fill_table(const DpInput& in, int max_len) {
    int n = in.n;
    auto table = std::make_shared<DpTable>(n);
    DpTable& t = *table;
    PinRanges pins(in);

    // Monotone stretches and pinned monotonicity along them.
    // asc[i*n+j]: every edge in [i,j) points forward.
    std::vector<bool> asc((size_t)n * n, false), desc((size_t)n * n, false);
    std::vector<bool> pin_incr((size_t)n * n, false), pin_decr((size_t)n * n, false);
    for (int i = 0; i < n; ++i) {
        asc[(size_t)i * n + i] = desc[(size_t)i * n + i] = true;
        pin_incr[(size_t)i * n + i] = pin_decr[(size_t)i * n + i] = true;
        int last_pin = in.pin[i] ? i : -1;
        bool inc = true, dec = true;
        for (int j = i + 1; j < n; ++j) {
            asc[(size_t)i * n + j] = asc[(size_t)i * n + j - 1] && in.fwd[j - 1];
            desc[(size_t)i * n + j] = desc[(size_t)i * n + j - 1] && !in.fwd[j - 1];
            if (in.pin[j]) {
                if (last_pin >= 0) {
                    inc = inc && *in.pin[last_pin] < *in.pin[j];
                    dec = dec && *in.pin[last_pin] > *in.pin[j];
                }
                last_pin = j;
            }
            pin_incr[(size_t)i * n + j] = inc;
            pin_decr[(size_t)i * n + j] = dec;
        }
    }

    auto cond6_pair = [&](int sink, int source) {
        // Both rotations aligned with the index order, or both reversed.
        return (in.p_aligned[sink] == 1 && in.s_aligned[source] == 1) ||
               (in.p_aligned[sink] == -1 && in.s_aligned[source] == -1);
    };

    for (int len = 1; len <= max_len && len < n; ++len) {
        for (int i = 0; i + len < n; ++i) {
            int j = i + len;
            if (asc[(size_t)i * n + j]) {
                if (pin_incr[(size_t)i * n + j]) t.set(i, j, i, j);
                t.refresh_wildcards(i, j);
                continue;
            }
            if (desc[(size_t)i * n + j]) {
                if (pin_decr[(size_t)i * n + j]) t.set(i, j, j, i);
                t.refresh_wildcards(i, j);
                continue;
            }
            for (int m = i; m <= j; ++m) {
                for (int M = i; M <= j; ++M) {
                    if (m == M) continue;
                    bool val = false;
                    if (m == i && M == j) {
                        // Both extremes at the ends, ascending.
                        if (pins.min_ok(i, i, j) && pins.max_ok(j, i, j)) {
                            for (int Mp = i + 1; Mp <= j - 2 && !val; ++Mp) {
                                if (!t.get(i, Mp, i, Mp)) continue;
                                for (int mp = Mp + 1; mp <= j - 1 && !val; ++mp)
                                    val = t.get(Mp, mp, mp, Mp) && t.get(mp, j, mp, j) &&
                                          cond6_pair(Mp, mp);
                            }
                        }
                    } else if (m == j && M == i) {
                        // Both extremes at the ends, descending.
                        if (pins.min_ok(j, i, j) && pins.max_ok(i, i, j)) {
                            for (int mp = i + 1; mp <= j - 2 && !val; ++mp) {
                                if (!t.get(i, mp, mp, i)) continue;
                                for (int Mp = mp + 1; Mp <= j - 1 && !val; ++Mp)
                                    val = t.get(mp, Mp, mp, Mp) && t.get(Mp, j, j, Mp) &&
                                          cond6_pair(Mp, mp);
                            }
                        }
                    } else if (m == i) {
                        val = t.get(i, M, i, M) && t.max_left_any(M, j) && pins.min_ok(i, i, j);
                    } else if (M == j) {
                        val = t.get(m, j, m, j) && t.min_right_any(i, m) && pins.max_ok(j, i, j);
                    } else if (m == j) {
                        val = t.get(M, j, j, M) && t.max_right_any(i, M) && pins.min_ok(j, i, j);
                    } else if (M == i) {
                        val = t.get(i, m, m, i) && t.min_left_any(m, j) && pins.max_ok(i, i, j);
                    } else if (m < M) {
                        val = t.min_right_any(i, m) && t.get(m, M, m, M) && t.max_left_any(M, j) &&
                              pins.min_ok(m, i, j) && pins.max_ok(M, i, j);
                    } else {
                        val = t.max_right_any(i, M) && t.get(M, m, m, M) && t.min_left_any(m, j) &&
                              pins.min_ok(m, i, j) && pins.max_ok(M, i, j);
                    }
                    if (val) t.set(i, j, m, M);
                }
            }
            t.refresh_wildcards(i, j);
        }
    }
    return table;
}

void require_preconditions(const UpeInstance& inst, bool need_embedding) {
    if (!inst.partial_edges.empty())
        throw std::invalid_argument("path/cycle solvers require an edgeless partial graph");
    if (need_embedding != inst.embedding.has_value())
        throw std::invalid_argument(need_embedding ? "solver needs an embedding"
                                                   : "solver takes no embedding");
    std::set<Rat> ys;
    for (const auto& [v, p] : inst.drawing.vertex_pos)
        if (!ys.insert(p.y).second)
            throw std::invalid_argument("pinned y-coordinates must be pairwise distinct");
}

DpInput build_input(const UpeInstance& inst, const std::vector<VertexId>& seq, bool cycle) {
    DpInput in;
    int n = (int)seq.size();
    in.n = cycle ? 2 * inst.graph.n : n;
    auto orig = [&](int k) { return seq[k % inst.graph.n]; };
    for (int k = 0; k + 1 < in.n; ++k)
        in.fwd.push_back(inst.graph.has_edge(orig(k), orig(k + 1)));
    in.pin.resize(in.n);
    in.s_aligned.assign(in.n, 0);
    in.p_aligned.assign(in.n, 0);
    for (int k = 0; k < in.n; ++k) {
        VertexId v = orig(k);
        if (inst.pinned(v)) in.pin[k] = inst.pos(v).y;
        if (!inst.embedding) continue;
        int nn = inst.graph.n;
        VertexId prev = cycle ? orig((k - 1 + nn) % nn) : (k > 0 ? seq[k - 1] : -1);
        VertexId next = cycle ? orig(k + 1) : (k + 1 < n ? seq[k + 1] : -1);
        const auto& su = inst.embedding->succ[v];
        const auto& pr = inst.embedding->pred[v];
        if (su.size() == 2) {
            if (su == std::vector<VertexId>{prev, next}) in.s_aligned[k] = 1;
            if (su == std::vector<VertexId>{next, prev}) in.s_aligned[k] = -1;
        }
        if (pr.size() == 2) {
            if (pr == std::vector<VertexId>{prev, next}) in.p_aligned[k] = 1;
            if (pr == std::vector<VertexId>{next, prev}) in.p_aligned[k] = -1;
        }
    }
    return in;
}

}  // namespace

PathFueResult solve_path_fue(const UpeInstance& inst) {
    require_preconditions(inst, true);
    if (!inst.embedding->consistent_with(inst.graph))
        throw std::invalid_argument("embedding inconsistent with the graph");
    bool cyc = false;
    PathFueResult res;
    if (inst.graph.n == 1) {
        res.decision = Decision::Yes;
        res.order = {0};
        return res;
    }
    res.order = trace_sequence(inst.graph, cyc);
    if (cyc) throw std::invalid_argument("solve_path_fue expects a path");
    DpInput in = build_input(inst, res.order, false);
    res.table = fill_table(in, in.n - 1);
    int n = in.n;
    for (int m = 0; m < n && res.decision == Decision::No; ++m)
        for (int M = 0; M < n; ++M)
            if (m != M && res.table->get(0, n - 1, m, M)) {
                res.decision = Decision::Yes;
                break;
            }
    return res;
}

Decision solve_cycle_fue(const UpeInstance& inst, std::pair<int, int>* extremes) {
    require_preconditions(inst, true);
    if (!inst.embedding->consistent_with(inst.graph))
        throw std::invalid_argument("embedding inconsistent with the graph");
    bool cyc = false;
    std::vector<VertexId> seq = trace_sequence(inst.graph, cyc);
    if (!cyc) throw std::invalid_argument("solve_cycle_fue expects a cycle");
    int n = inst.graph.n;
    DpInput in = build_input(inst, seq, true);
    auto table = fill_table(in, n);

    auto orig = [&](int k) { return seq[k % n]; };
    for (int m = 0; m < n; ++m) {
        for (int M = 0; M < n; ++M) {
            if (m == M) continue;
            // Rotation at the global extremes closes the cycle: crossed
            // alignment, unlike the open-path case.
            VertexId vm = seq[m], vM = seq[M];
            VertexId m_prev = orig((m - 1 + n) % n), m_next = orig(m + 1);
            VertexId M_prev = orig((M - 1 + n) % n), M_next = orig(M + 1);
            const auto& su = inst.embedding->succ[vm];
            const auto& pr = inst.embedding->pred[vM];
            if (su.size() != 2 || pr.size() != 2) continue;
            bool opt1 = pr == std::vector<VertexId>{M_prev, M_next} &&
                        su == std::vector<VertexId>{m_next, m_prev};
            bool opt2 = pr == std::vector<VertexId>{M_next, M_prev} &&
                        su == std::vector<VertexId>{m_prev, m_next};
            if (!opt1 && !opt2) continue;
            bool halves;
            if (m < M)
                halves = table->get(m, M, m, M) && table->get(M, n + m, n + m, M);
            else
                halves = table->get(M, m, m, M) && table->get(m, n + M, m, n + M);
            if (halves) {
                if (extremes) *extremes = {m, M};
                return Decision::Yes;
            }
        }
    }
    return Decision::No;
}

Decision solve_path_or_cycle_upe(const UpeInstance& inst) {
    require_preconditions(inst, false);
    MonotoneRunPartition part = partition_monotone_runs(inst.graph);
    if (part.is_cycle && part.runs.size() == 1) return Decision::No;  // directed cycle
    for (const auto& run : part.runs) {
        // Orient the run along its edges, then pinned heights must rise.
        std::vector<VertexId> r = run;
        if (r.size() >= 2 && !inst.graph.has_edge(r[0], r[1])) std::reverse(r.begin(), r.end());
        const Rat* last = nullptr;
        for (VertexId v : r) {
            if (!inst.pinned(v)) continue;
            const Rat& y = inst.pos(v).y;
            if (last && !(*last < y)) return Decision::No;
            last = &y;
        }
    }
    return Decision::Yes;
}

nlohmann::ordered_json extract_decomposition(const UpeInstance& inst, const PathFueResult& res) {
    using Json = nlohmann::ordered_json;
    if (res.decision != Decision::Yes || !res.table) return Json();
    const DpTable& t = *res.table;
    int n = t.size();
    DpInput in = build_input(inst, res.order, false);
    PinRanges pins(in);

    std::function<Json(int, int, int, int)> rec = [&](int i, int j, int m, int M) -> Json {
        Json node;
        node["entry"] = {i, j, m, M};
        bool monotone = true;
        for (int k = i; k < j; ++k)
            if (in.fwd[k] != in.fwd[i]) monotone = false;
        if (monotone) {
            node["rule"] = "base";
            node["splits"] = Json::array();
            return node;
        }
        auto child = [&](int a, int b, int c, int d) { return rec(a, b, c, d); };
        Json splits = Json::array();
        if (m == i && M == j) {
            node["rule"] = "claim6";
            for (int Mp = i + 1; Mp <= j - 2; ++Mp)
                for (int mp = Mp + 1; mp <= j - 1; ++mp)
                    if (t.get(i, Mp, i, Mp) && t.get(Mp, mp, mp, Mp) && t.get(mp, j, mp, j) &&
                        ((in.p_aligned[Mp] == 1 && in.s_aligned[mp] == 1) ||
                         (in.p_aligned[Mp] == -1 && in.s_aligned[mp] == -1))) {
                        splits.push_back(child(i, Mp, i, Mp));
                        splits.push_back(child(Mp, mp, mp, Mp));
                        splits.push_back(child(mp, j, mp, j));
                        node["splits"] = splits;
                        return node;
                    }
        } else if (m == j && M == i) {
            node["rule"] = "claim6";
            for (int mp = i + 1; mp <= j - 2; ++mp)
                for (int Mp = mp + 1; Mp <= j - 1; ++Mp)
                    if (t.get(i, mp, mp, i) && t.get(mp, Mp, mp, Mp) && t.get(Mp, j, j, Mp) &&
                        ((in.p_aligned[Mp] == 1 && in.s_aligned[mp] == 1) ||
                         (in.p_aligned[Mp] == -1 && in.s_aligned[mp] == -1))) {
                        splits.push_back(child(i, mp, mp, i));
                        splits.push_back(child(mp, Mp, mp, Mp));
                        splits.push_back(child(Mp, j, j, Mp));
                        node["splits"] = splits;
                        return node;
                    }
        } else if (m == i || M == j || m == j || M == i) {
            node["rule"] = "claim5";
            if (m == i) {
                splits.push_back(child(i, M, i, M));
                for (int mp = M + 1; mp <= j; ++mp)
                    if (t.get(M, j, mp, M)) {
                        splits.push_back(child(M, j, mp, M));
                        break;
                    }
            } else if (M == j) {
                for (int Mp = i; Mp < m; ++Mp)
                    if (t.get(i, m, m, Mp)) {
                        splits.push_back(child(i, m, m, Mp));
                        break;
                    }
                splits.push_back(child(m, j, m, j));
            } else if (m == j) {
                for (int mp = i; mp < M; ++mp)
                    if (t.get(i, M, mp, M)) {
                        splits.push_back(child(i, M, mp, M));
                        break;
                    }
                splits.push_back(child(M, j, j, M));
            } else {
                splits.push_back(child(i, m, m, i));
                for (int Mp = m + 1; Mp <= j; ++Mp)
                    if (t.get(m, j, m, Mp)) {
                        splits.push_back(child(m, j, m, Mp));
                        break;
                    }
            }
            node["splits"] = splits;
        } else {
            node["rule"] = "claim4";
            if (m < M) {
                for (int Mp = i; Mp < m; ++Mp)
                    if (t.get(i, m, m, Mp)) {
                        splits.push_back(child(i, m, m, Mp));
                        break;
                    }
                splits.push_back(child(m, M, m, M));
                for (int mp = M + 1; mp <= j; ++mp)
                    if (t.get(M, j, mp, M)) {
                        splits.push_back(child(M, j, mp, M));
                        break;
                    }
            } else {
                for (int mp = i; mp < M; ++mp)
                    if (t.get(i, M, mp, M)) {
                        splits.push_back(child(i, M, mp, M));
                        break;
                    }
                splits.push_back(child(M, m, m, M));
                for (int Mp = m + 1; Mp <= j; ++Mp)
                    if (t.get(m, j, m, Mp)) {
                        splits.push_back(child(m, j, m, Mp));
                        break;
                    }
            }
            node["splits"] = splits;
        }
        return node;
    };
    for (int m = 0; m < n; ++m)
        for (int M = 0; M < n; ++M)
            if (m != M && t.get(0, n - 1, m, M)) return rec(0, n - 1, m, M);
    return Json();
}

}  // namespace upex
