#include "upex/engine.hpp"

#include "upex/levelplan.hpp"
#include "upex/pathcycle.hpp"
#include "upex/stgraph.hpp"

#include <stdexcept>

namespace upex {

const char* engine_name(EngineKind k) {
    switch (k) {
        case EngineKind::Auto: return "auto";
        case EngineKind::StFue: return "st-fue";
        case EngineKind::StUpe: return "st-upe";
        case EngineKind::PathFue: return "path-fue";
        case EngineKind::CycleFue: return "cycle-fue";
        case EngineKind::PathUpe: return "path-upe";
        case EngineKind::Olp: return "olp";
        case EngineKind::Oracle: return "oracle";
    }
    return "?";
}

EngineKind parse_engine(const std::string& name) {
    for (EngineKind k : {EngineKind::Auto, EngineKind::StFue, EngineKind::StUpe,
                         EngineKind::PathFue, EngineKind::CycleFue, EngineKind::PathUpe,
                         EngineKind::Olp, EngineKind::Oracle})
        if (name == engine_name(k)) return k;
    throw std::invalid_argument("unknown engine: " + name);
}

namespace {

bool is_path_or_cycle(const DirectedGraph& g, bool& cycle) {
    if (g.n < 2) return false;
    std::vector<int> deg(g.n, 0);
    for (const Edge& e : g.edges) {
        deg[e.tail]++;
        deg[e.head]++;
    }
    int deg1 = 0;
    for (int d : deg) {
        if (d == 1) ++deg1;
        else if (d != 2) return false;
    }
    // Connectivity via a walk.
    std::vector<std::vector<VertexId>> adj(g.n);
    for (const Edge& e : g.edges) {
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    std::vector<bool> seen(g.n, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    int cnt = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++cnt;
        for (VertexId w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    if (cnt != g.n) return false;
    if (deg1 == 2 && (int)g.edges.size() == g.n - 1) {
        cycle = false;
        return true;
    }
    if (deg1 == 0 && (int)g.edges.size() == g.n && g.n >= 3) {
        cycle = true;
        return true;
    }
    return false;
}

bool distinct_pin_heights(const UpeInstance& inst) {
    std::set<Rat> ys;
    for (const auto& [v, p] : inst.drawing.vertex_pos)
        if (!ys.insert(p.y).second) return false;
    return true;
}

}  // namespace

EngineKind select_engine(const UpeInstance& inst, int oracle_cap) {
    bool cycle = false;
    bool pc = is_path_or_cycle(inst.graph, cycle);
    bool edgeless = inst.partial_edges.empty();
    bool distinct = distinct_pin_heights(inst);
    if (is_st_graph(inst.graph)) return inst.embedding ? EngineKind::StFue : EngineKind::StUpe;
    if (pc && edgeless && distinct) {
        if (inst.embedding) return cycle ? EngineKind::CycleFue : EngineKind::PathFue;
        return EngineKind::PathUpe;
    }
    if (!inst.embedding && edgeless && distinct &&
        (int)inst.partial_vertices.size() == inst.graph.n)
        return EngineKind::Olp;
    if (inst.graph.n <= oracle_cap) return EngineKind::Oracle;
    throw std::runtime_error("no applicable engine for this instance");
}

DecideOutcome decide(const UpeInstance& inst, EngineKind kind, int oracle_cap,
                     bool want_witness) {
    if (kind == EngineKind::Auto) kind = select_engine(inst, oracle_cap);
    DecideOutcome out;
    out.engine = kind;
    switch (kind) {
        case EngineKind::StFue: {
            out.decision = solve_st_fue(inst);
            if (out.decision == Decision::Yes && want_witness)
                out.witness = drawing_to_json(build_witness_drawing_st(inst));
            break;
        }
        case EngineKind::StUpe: {
            auto res = solve_st_upe(inst);
            out.decision = res.decision;
            if (res.embedding && want_witness) {
                Json emb;
                emb["succ"] = Json::object();
                emb["pred"] = Json::object();
                for (VertexId v = 0; v < inst.graph.n; ++v) {
                    emb["succ"][std::to_string(v)] = res.embedding->succ[v];
                    emb["pred"][std::to_string(v)] = res.embedding->pred[v];
                }
                out.witness = emb;
            }
            break;
        }
        case EngineKind::PathFue: {
            auto res = solve_path_fue(inst);
            out.decision = res.decision;
            if (res.decision == Decision::Yes && want_witness)
                out.witness = extract_decomposition(inst, res);
            break;
        }
        case EngineKind::CycleFue: {
            std::pair<int, int> mM;
            out.decision = solve_cycle_fue(inst, &mM);
            if (out.decision == Decision::Yes && want_witness)
                out.witness = Json{{"rule", "claim7"}, {"pair", {mM.first, mM.second}}};
            break;
        }
        case EngineKind::PathUpe:
            out.decision = solve_path_or_cycle_upe(inst);
            break;
        case EngineKind::Olp:
            out.decision = solve_upe_edgeless_distinct_y(inst);
            break;
        case EngineKind::Oracle: {
            OracleOptions opt;
            opt.cap = oracle_cap;
            opt.materialize = want_witness;
            auto res = brute_force_decide(inst, opt);
            out.decision = res.decision;
            if (res.witness && want_witness) out.witness = drawing_to_json(*res.witness);
            break;
        }
        case EngineKind::Auto: break;  // unreachable
    }
    return out;
}

DecideOutcome decide_cross_checked(const UpeInstance& inst, int oracle_cap) {
    std::vector<EngineKind> applicable;
    bool cycle = false;
    bool pc = is_path_or_cycle(inst.graph, cycle);
    bool edgeless = inst.partial_edges.empty();
    bool distinct = distinct_pin_heights(inst);
    if (is_st_graph(inst.graph) && inst.embedding) applicable.push_back(EngineKind::StFue);
    if (is_st_graph(inst.graph) && !inst.embedding) applicable.push_back(EngineKind::StUpe);
    if (pc && edgeless && distinct && inst.embedding)
        applicable.push_back(cycle ? EngineKind::CycleFue : EngineKind::PathFue);
    if (pc && edgeless && distinct && !inst.embedding) applicable.push_back(EngineKind::PathUpe);
    if (!inst.embedding && edgeless && distinct &&
        (int)inst.partial_vertices.size() == inst.graph.n)
        applicable.push_back(EngineKind::Olp);
    if (inst.graph.n <= oracle_cap) applicable.push_back(EngineKind::Oracle);
    if (applicable.empty()) throw std::runtime_error("no applicable engine for this instance");

    DecideOutcome first;
    bool have = false;
    for (EngineKind k : applicable) {
        DecideOutcome cur = decide(inst, k, oracle_cap, !have);
        if (!have) {
            first = cur;
            have = true;
        } else if (cur.decision != first.decision) {
            throw std::logic_error(std::string("engine disagreement: ") +
                                   engine_name(first.engine) + " vs " + engine_name(cur.engine));
        }
    }
    return first;
}

}  // namespace upex
