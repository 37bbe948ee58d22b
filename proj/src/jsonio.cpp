#include "upex/jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace upex {

namespace {

Json int_or_string(const mpz_class& z) {
    if (z.fits_slong_p()) return (int64_t)z.get_si();
    return z.get_str();
}

mpz_class mpz_from_json(const Json& j) {
    if (j.is_number_integer()) return mpz_class((long)j.get<int64_t>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::runtime_error("expected integer or integer string");
}

}  // namespace

Json rat_to_json(const Rat& r) {
    return Json::array({int_or_string(r.get_num()), int_or_string(r.get_den())});
}

Rat rat_from_json(const Json& num, const Json& den) {
    Rat r(mpz_from_json(num), mpz_from_json(den));
    if (sign(Rat(r.get_den())) == 0) throw std::runtime_error("zero denominator");
    r.canonicalize();
    return r;
}

Json point_to_json(const Point& p) {
    return Json::array({int_or_string(p.x.get_num()), int_or_string(p.x.get_den()),
                        int_or_string(p.y.get_num()), int_or_string(p.y.get_den())});
}

Point point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw std::runtime_error("point must be [xn,xd,yn,yd]");
    return Point{rat_from_json(j[0], j[1]), rat_from_json(j[2], j[3])};
}

Json instance_to_json(const UpeInstance& inst) {
    Json j;
    j["n"] = inst.graph.n;
    j["edges"] = Json::array();
    for (const Edge& e : inst.graph.edges) j["edges"].push_back({e.tail, e.head});
    j["H_vertices"] = Json::array();
    for (VertexId v : inst.partial_vertices) j["H_vertices"].push_back(v);
    j["H_edges"] = Json::array();
    for (const Edge& e : inst.partial_edges) j["H_edges"].push_back({e.tail, e.head});
    j["positions"] = Json::object();
    for (const auto& [v, p] : inst.drawing.vertex_pos)
        j["positions"][std::to_string(v)] = point_to_json(p);
    j["routes"] = Json::object();
    for (const auto& [e, r] : inst.drawing.edge_routes) {
        Json pts = Json::array();
        for (const Point& p : r) pts.push_back(point_to_json(p));
        j["routes"][std::to_string(e.tail) + "-" + std::to_string(e.head)] = pts;
    }
    if (inst.embedding) {
        Json emb;
        emb["succ"] = Json::object();
        emb["pred"] = Json::object();
        for (VertexId v = 0; v < inst.graph.n; ++v) {
            emb["succ"][std::to_string(v)] = inst.embedding->succ[v];
            emb["pred"][std::to_string(v)] = inst.embedding->pred[v];
        }
        j["embedding"] = emb;
    }
    return j;
}

UpeInstance instance_from_json(const Json& j) {
    UpeInstance inst;
    inst.graph.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
        inst.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    if (j.contains("H_vertices"))
        for (const auto& v : j.at("H_vertices")) inst.partial_vertices.insert(v.get<int>());
    if (j.contains("H_edges"))
        for (const auto& e : j.at("H_edges"))
            inst.partial_edges.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    if (j.contains("positions"))
        for (auto it = j.at("positions").begin(); it != j.at("positions").end(); ++it)
            inst.drawing.vertex_pos[std::stoi(it.key())] = point_from_json(it.value());
    if (j.contains("routes")) {
        for (auto it = j.at("routes").begin(); it != j.at("routes").end(); ++it) {
            auto dash = it.key().find('-');
            if (dash == std::string::npos) throw std::runtime_error("route key must be tail-head");
            Edge e{std::stoi(it.key().substr(0, dash)), std::stoi(it.key().substr(dash + 1))};
            Polyline pl;
            for (const auto& p : it.value()) pl.push_back(point_from_json(p));
            inst.drawing.edge_routes[e] = pl;
        }
    }
    if (j.contains("embedding") && !j.at("embedding").is_null()) {
        UpwardEmbedding emb;
        emb.succ.assign(inst.graph.n, {});
        emb.pred.assign(inst.graph.n, {});
        const Json& ej = j.at("embedding");
        for (auto it = ej.at("succ").begin(); it != ej.at("succ").end(); ++it)
            emb.succ[std::stoi(it.key())] = it.value().get<std::vector<int>>();
        for (auto it = ej.at("pred").begin(); it != ej.at("pred").end(); ++it)
            emb.pred[std::stoi(it.key())] = it.value().get<std::vector<int>>();
        inst.embedding = emb;
    }
    return inst;
}

Json olg_to_json(const OrderedLevelGraph& olg) {
    Json j;
    j["n"] = olg.graph.n;
    j["edges"] = Json::array();
    for (const Edge& e : olg.graph.edges) j["edges"].push_back({e.tail, e.head});
    j["level"] = Json::object();
    for (VertexId v = 0; v < olg.graph.n; ++v) j["level"][std::to_string(v)] = olg.level[v];
    j["xi"] = Json::object();
    for (size_t i = 0; i < olg.xi.size(); ++i) j["xi"][std::to_string(i + 1)] = olg.xi[i];
    return j;
}

OrderedLevelGraph olg_from_json(const Json& j) {
    OrderedLevelGraph olg;
    olg.graph.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
        olg.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    olg.level.assign(olg.graph.n, 0);
    for (auto it = j.at("level").begin(); it != j.at("level").end(); ++it)
        olg.level[std::stoi(it.key())] = it.value().get<int>();
    int k = 0;
    for (int l : olg.level) k = std::max(k, l);
    olg.xi.assign(k, {});
    for (auto it = j.at("xi").begin(); it != j.at("xi").end(); ++it)
        olg.xi[std::stoi(it.key()) - 1] = it.value().get<std::vector<int>>();
    return olg;
}

Json drawing_to_json(const FullDrawing& d) {
    Json j;
    j["positions"] = Json::array();
    for (const Point& p : d.vertex_pos) j["positions"].push_back(point_to_json(p));
    j["routes"] = Json::object();
    for (const auto& [e, r] : d.edge_routes) {
        Json pts = Json::array();
        for (const Point& p : r) pts.push_back(point_to_json(p));
        j["routes"][std::to_string(e.tail) + "-" + std::to_string(e.head)] = pts;
    }
    return j;
}

FullDrawing drawing_from_json(const Json& j) {
    FullDrawing d;
    for (const auto& p : j.at("positions")) d.vertex_pos.push_back(point_from_json(p));
    for (auto it = j.at("routes").begin(); it != j.at("routes").end(); ++it) {
        auto dash = it.key().find('-');
        Edge e{std::stoi(it.key().substr(0, dash)), std::stoi(it.key().substr(dash + 1))};
        Polyline pl;
        for (const auto& p : it.value()) pl.push_back(point_from_json(p));
        d.edge_routes[e] = pl;
    }
    return d;
}

UpeInstance read_instance_file(const std::string& path) {
    return instance_from_json(read_json_file(path));
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(1) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    Json j;
    is >> j;
    return j;
}

}  // namespace upex
