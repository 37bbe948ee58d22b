#include "upex/generate.hpp"

#include "upex/stgraph.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <stdexcept>

namespace upex {

namespace {

using Rng = std::mt19937_64;

// Distinct integer heights following a random zigzag; runs stay monotone.
std::vector<long> zigzag_heights(Rng& rng, int n) {
    std::set<long> used;
    std::vector<long> ys{0};
    used.insert(0);
    long cur = 0;
    bool up = true;
    for (int k = 1; k < n; ++k) {
        if (rng() % 3 == 0) up = !up;
        long step = 1 + (long)(rng() % 3);
        long next = up ? cur + step : cur - step;
        while (used.count(next)) next += up ? 1 : -1;
        ys.push_back(next);
        used.insert(next);
        cur = next;
    }
    return ys;
}

void pin_from_positions(UpeInstance& inst, const std::vector<Point>& pos, Rng& rng,
                        double fraction, bool adversarial) {
    std::uniform_real_distribution<double> coin(0, 1);
    for (VertexId v = 0; v < inst.graph.n; ++v) {
        if (coin(rng) > fraction) continue;
        inst.partial_vertices.insert(v);
        inst.drawing.vertex_pos[v] = pos[v];
    }
    if (adversarial && inst.partial_vertices.size() > 1) {
        std::vector<Rat> ys;
        for (const auto& [v, p] : inst.drawing.vertex_pos) ys.push_back(p.y);
        std::shuffle(ys.begin(), ys.end(), rng);
        size_t i = 0;
        for (auto& [v, p] : inst.drawing.vertex_pos) p.y = ys[i++];
    }
}

UpeInstance generate_path(const GenOptions& opt, Rng& rng) {
    int n = opt.n;
    std::vector<long> ys = zigzag_heights(rng, n);
    UpeInstance inst;
    inst.graph.n = n;
    for (int k = 0; k + 1 < n; ++k)
        inst.graph.edges.push_back(ys[k] < ys[k + 1] ? Edge{k, k + 1} : Edge{k + 1, k});
    std::vector<Point> pos(n);
    for (int k = 0; k < n; ++k) pos[k] = Point{rat(k), rat(ys[k])};
    if (opt.embedded) {
        // Rotations realized by the column drawing: the left neighbor first.
        UpwardEmbedding emb;
        emb.succ.resize(n);
        emb.pred.resize(n);
        for (int k = 0; k < n; ++k) {
            for (int o : {k - 1, k + 1}) {
                if (o < 0 || o >= n) continue;
                if (inst.graph.has_edge(k, o)) emb.succ[k].push_back(o);
                if (inst.graph.has_edge(o, k)) emb.pred[k].push_back(o);
            }
        }
        inst.embedding = emb;
    }
    pin_from_positions(inst, pos, rng, opt.pin_fraction, opt.adversarial);
    return inst;
}

UpeInstance generate_cycle(const GenOptions& opt, Rng& rng) {
    int n = opt.n;
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    // Two sides between a shared bottom p and top q: the left side zigzags
    // through columns x = -1..-left, the right side through x = 1..right.
    // Each side's top edge is routed over everything, so the columns plus
    // two bends give a crossing-free drawing whose rotations are [next,
    // prev] on the left side and [prev, next] on the right.
    int left = 1 + (int)(rng() % (n - 2));  // inner vertices on the left side
    int right = n - 2 - left;
    long Y = 4L * n;
    std::set<long> used{0, Y};
    auto inner_heights = [&](int count) {
        std::vector<long> hs;
        while ((int)hs.size() < count) {
            long y = 1 + (long)(rng() % (Y - 1));
            if (used.insert(y).second) hs.push_back(y);
        }
        return hs;
    };
    std::vector<long> lh = inner_heights(left), rh = inner_heights(right);

    // Vertex ids in cycle order: p, left side up, q, right side down.
    UpeInstance inst;
    inst.graph.n = n;
    std::vector<Point> pos(n);
    std::vector<long> ys(n);
    pos[0] = Point{rat(0), rat(0)};
    ys[0] = 0;
    for (int i = 0; i < left; ++i) {
        pos[1 + i] = Point{rat(-(i + 1)), rat(lh[i])};
        ys[1 + i] = lh[i];
    }
    pos[1 + left] = Point{rat(0), rat(Y)};
    ys[1 + left] = Y;
    for (int i = 0; i < right; ++i) {
        // Cycle order walks the right side downward from q.
        pos[2 + left + i] = Point{rat(right - i), rat(rh[i])};
        ys[2 + left + i] = rh[i];
    }
    for (int k = 0; k < n; ++k) {
        int a = k, b = (k + 1) % n;
        inst.graph.edges.push_back(ys[a] < ys[b] ? Edge{a, b} : Edge{b, a});
    }
    if (opt.embedded) {
        // In the column drawing the cycle-order successor sits to the left
        // at every vertex, except at the top pole where the left side is
        // the cycle-order predecessor.
        UpwardEmbedding emb;
        emb.succ.resize(n);
        emb.pred.resize(n);
        int q = 1 + left;
        for (int k = 0; k < n; ++k) {
            VertexId prev = (k - 1 + n) % n, next = (k + 1) % n;
            std::vector<VertexId> first_second{next, prev};
            if (k == q) first_second = {prev, next};
            for (VertexId nb : first_second) {
                if (inst.graph.has_edge(k, nb)) emb.succ[k].push_back(nb);
                if (inst.graph.has_edge(nb, k)) emb.pred[k].push_back(nb);
            }
        }
        inst.embedding = emb;
    }
    pin_from_positions(inst, pos, rng, opt.pin_fraction, opt.adversarial);
    return inst;
}

// Random series-parallel composition with exact vertex count, plus exact
// positions from a stacked/slabbed box drawing of the composition.
struct SpGen {
    Rng& rng;
    DirectedGraph g;
    UpwardEmbedding emb;
    std::vector<Point> pos;

    VertexId new_vertex(Point p) {
        pos.push_back(p);
        emb.succ.emplace_back();
        emb.pred.emplace_back();
        return g.n++;
    }
    void add_edge(VertexId a, VertexId b) {
        g.edges.push_back({a, b});
        emb.succ[a].push_back(b);
        emb.pred[b].push_back(a);
    }

    struct Box {
        Rat x0, x1, y0, y1;
    };

    // Builds a component with `budget` vertices including both poles.
    void build(int budget, VertexId s, VertexId t, Box box) {
        if (budget == 2) {
            add_edge(s, t);
            return;
        }
        bool series = budget >= 3 && (budget < 4 || rng() % 2 == 0);
        if (series) {
            // Split into two chained parts sharing a new cut vertex. Large
            // budgets use balanced splits to keep the recursion shallow.
            int n1 = budget > 64 ? budget / 3 + (int)(rng() % (budget / 3))
                                 : 2 + (int)(rng() % (budget - 2));
            Rat ymid = box.y0 + (box.y1 - box.y0) * Rat((long)n1 - 1) / Rat((long)budget - 1);
            VertexId c = new_vertex(Point{(box.x0 + box.x1) / 2, ymid});
            build(n1, s, c, Box{box.x0, box.x1, box.y0, ymid});
            build(budget - n1 + 1, c, t, Box{box.x0, box.x1, ymid, box.y1});
        } else {
            // Two proper parallel parts in side-by-side slabs, plus
            // sometimes the direct closing edge as the rightmost branch.
            int n1 = budget > 64 ? budget / 3 + (int)(rng() % (budget / 3))
                                 : 3 + (int)(rng() % (budget - 3));
            n1 = std::clamp(n1, 3, budget - 1);
            int n2 = budget - n1 + 2;
            Rat xmid = (box.x0 + box.x1) / 2;
            build(n1, s, t, Box{box.x0, xmid, box.y0, box.y1});
            build(n2, s, t, Box{xmid, box.x1, box.y0, box.y1});
            if (!g.has_edge(s, t) && rng() % 3 == 0) add_edge(s, t);
        }
    }
};

UpeInstance generate_st(const GenOptions& opt, Rng& rng) {
    int n = opt.n;
    if (n < 2) throw std::invalid_argument("st graph needs at least 2 vertices");
    SpGen gen{rng, {}, {}, {}};
    VertexId s = gen.new_vertex(Point{rat(0), rat(0)});
    VertexId t = gen.new_vertex(Point{rat(0), rat(1)});
    gen.build(n, s, t, SpGen::Box{rat(-1), rat(1), rat(0), rat(1)});

    UpeInstance inst;
    inst.graph = gen.g;
    inst.embedding = gen.emb;

    // Random chords across faces, kept only when the drawn positions stay
    // extendable (checked via the fixed-embedding solver on a full pin set).
    auto fully_pinned = [&]() {
        UpeInstance full = inst;
        for (VertexId v = 0; v < inst.graph.n; ++v) {
            full.partial_vertices.insert(v);
            full.drawing.vertex_pos[v] = gen.pos[v];
        }
        return full;
    };
    int attempts = opt.face_insertions >= 0 ? opt.face_insertions : std::min(n / 4, 24);
    for (int it = 0; it < attempts; ++it) {
        FaceSet fs;
        try {
            fs = compute_faces(inst.graph, *inst.embedding);
        } catch (const std::exception&) {
            break;
        }
        if (fs.faces.empty()) break;
        const Face& f = fs.faces[rng() % fs.faces.size()];
        std::vector<VertexId> boundary = f.left;
        boundary.insert(boundary.end(), f.right.begin() + 1, f.right.end() - 1);
        VertexId a = boundary[rng() % boundary.size()];
        VertexId b = boundary[rng() % boundary.size()];
        if (a == b || !(gen.pos[a].y < gen.pos[b].y)) continue;
        if (inst.graph.has_edge(a, b) || inst.graph.has_edge(b, a)) continue;
        // Insert on the face: a right after its left-boundary continuation.
        UpeInstance trial = inst;
        trial.graph.edges.push_back({a, b});
        auto place = [&](std::vector<VertexId>& lst, VertexId nb, VertexId ref) {
            auto it2 = ref < 0 ? lst.end() : std::find(lst.begin(), lst.end(), ref);
            if (it2 != lst.end()) ++it2;
            lst.insert(it2, nb);
        };
        auto left_pos = std::find(f.left.begin(), f.left.end(), a);
        VertexId succ_ref = -1, pred_ref = -1;
        if (left_pos != f.left.end() && left_pos + 1 != f.left.end()) succ_ref = *(left_pos + 1);
        auto head_pos = std::find(f.left.begin(), f.left.end(), b);
        if (head_pos != f.left.end() && head_pos != f.left.begin()) pred_ref = *(head_pos - 1);
        place(trial.embedding->succ[a], b, succ_ref);
        place(trial.embedding->pred[b], a, pred_ref);
        try {
            UpeInstance full = [&] {
                UpeInstance fi = trial;
                for (VertexId v = 0; v < fi.graph.n; ++v) {
                    fi.partial_vertices.insert(v);
                    fi.drawing.vertex_pos[v] = gen.pos[v];
                }
                return fi;
            }();
            if (solve_st_fue(full) == Decision::Yes) inst = trial;
        } catch (const std::exception&) {
        }
    }

    // Final sanity: the drawn positions must extend under the embedding.
    {
        UpeInstance full = fully_pinned();
        if (solve_st_fue(full) != Decision::Yes)
            throw std::logic_error("generated st positions are not extendable");
    }
    pin_from_positions(inst, gen.pos, rng, opt.pin_fraction, opt.adversarial);
    if (!opt.embedded) inst.embedding.reset();
    return inst;
}

}  // namespace

UpeInstance generate_instance(const GenOptions& opt) {
    if (opt.n < 2) throw std::invalid_argument("generator needs n >= 2");
    Rng rng(opt.seed * 0x9e3779b97f4a7c15ULL + opt.kind * 131 + opt.n);
    switch (opt.kind) {
        case GenOptions::Path: return generate_path(opt, rng);
        case GenOptions::Cycle: return generate_cycle(opt, rng);
        case GenOptions::St: return generate_st(opt, rng);
    }
    throw std::invalid_argument("unknown kind");
}

}  // namespace upex
