#include "upex/engine.hpp"
#include "upex/generate.hpp"
#include "upex/jsonio.hpp"
#include "upex/levelplan.hpp"
#include "upex/pathcycle.hpp"
#include "upex/transforms.hpp"
#include "upex/stgraph.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace upex;

int oracle_cap_from_env(int fallback) {
    const char* cap = std::getenv("UPEX_ORACLE_CAP");
    if (!cap) return fallback;
    return std::atoi(cap);
}

std::string rat_str(const Rat& r) { return r.get_str(); }

// Vertices as labeled circles, H elements highlighted, edges as polylines,
// scaled into a 1000x1000 viewport with the y-axis flipped for screens.
// The exact drawing rides along in a metadata block so consumers can verify
// without parsing back decimal approximations.
void write_svg(const std::string& path, const UpeInstance& inst, const FullDrawing& d) {
    Rat minx = d.vertex_pos[0].x, maxx = minx, miny = d.vertex_pos[0].y, maxy = miny;
    auto stretch = [&](const Point& p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (const Point& p : d.vertex_pos) stretch(p);
    for (const auto& [e, r] : d.edge_routes)
        for (const Point& p : r) stretch(p);
    Rat w = maxx - minx, h = maxy - miny;
    if (sign(w) == 0) w = 1;
    if (sign(h) == 0) h = 1;
    auto sx = [&](const Rat& x) { return Rat((x - minx) * 940 / w + 30).get_d(); };
    auto sy = [&](const Rat& y) { return 1000.0 - Rat((y - miny) * 940 / h + 30).get_d(); };

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
          "viewBox=\"0 0 1000 1000\">\n";
    os << "<!-- affine map: sx(x) = (x - (" << rat_str(minx) << ")) * 940 / (" << rat_str(w)
       << ") + 30 ; sy(y) = 1000 - ((y - (" << rat_str(miny) << ")) * 940 / (" << rat_str(h)
       << ") + 30) ; y axis flipped -->\n";
    os << "<metadata id=\"upex-drawing\">" << drawing_to_json(d).dump() << "</metadata>\n";
    for (const auto& [e, r] : d.edge_routes) {
        bool pinned = inst.pinned_edge(e);
        os << "<polyline fill=\"none\" stroke=\"" << (pinned ? "#c0392b" : "#2c3e50")
           << "\" stroke-width=\"" << (pinned ? 3 : 1.5) << "\" points=\"";
        for (const Point& p : r) os << sx(p.x) << "," << sy(p.y) << " ";
        os << "\"/>\n";
    }
    for (VertexId v = 0; v < inst.graph.n; ++v) {
        const Point& p = d.vertex_pos[v];
        bool pinned = inst.pinned(v);
        os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\""
           << (pinned ? 8 : 5) << "\" fill=\"" << (pinned ? "#c0392b" : "#2980b9") << "\"/>\n";
        os << "<text x=\"" << sx(p.x) + 10 << "\" y=\"" << sy(p.y) - 10
           << "\" font-size=\"16\">" << v << "</text>\n";
    }
    os << "</svg>\n";
}

Certificate certificate_from_json(const UpeInstance& inst, const Json& j) {
    Certificate cert;
    cert.y_class.assign(inst.graph.n, -1);
    for (auto it = j.at("y").begin(); it != j.at("y").end(); ++it)
        cert.y_class[std::stoi(it.key())] = it.value().get<int>();
    for (const auto& line : j.at("sigma")) {
        std::vector<CertElem> sig;
        for (const auto& el : line) {
            std::string kind = el.at(0).get<std::string>();
            if (kind == "v") {
                sig.push_back({true, el.at(1).get<int>()});
            } else {
                int ei = inst.graph.edge_index(el.at(1).get<int>(), el.at(2).get<int>());
                if (ei < 0) throw std::runtime_error("certificate names a missing edge");
                sig.push_back({false, ei});
            }
        }
        cert.sigma.push_back(std::move(sig));
    }
    return cert;
}

int cmd_decide(const std::string& file, const std::string& engine, bool cross_check,
               bool as_olg, int oracle_cap) {
    UpeInstance inst = as_olg ? olp_to_upe(olg_from_json(read_json_file(file)))
                              : read_instance_file(file);
    auto rep = validate_instance(inst);
    if (!rep.ok) {
        std::cerr << "invalid instance: " << rep.error << "\n";
        return 2;
    }
    DecideOutcome out = cross_check ? decide_cross_checked(inst, oracle_cap)
                                    : decide(inst, parse_engine(engine), oracle_cap);
    Json j;
    j["decision"] = out.decision == Decision::Yes ? "yes" : "no";
    j["engine"] = engine_name(out.engine);
    j["witness"] = out.witness;
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_transform(const std::string& file, const std::string& which, const std::string& out_path) {
    UpeInstance inst = read_instance_file(file);
    auto rep = validate_instance(inst);
    if (!rep.ok) {
        std::cerr << "invalid instance: " << rep.error << "\n";
        return 2;
    }
    TransformResult res;
    if (which == "no-partial-edges") {
        res = eliminate_partial_edges(inst);
    } else if (which == "distinct-y") {
        res = make_distinct_y(inst);
    } else {
        std::cerr << "unknown transform: " << which << "\n";
        return 2;
    }
    Json j;
    j["instance"] = instance_to_json(res.instance);
    Json vmap = Json::array();
    for (const auto& vo : res.map.vertex_origin) {
        Json item;
        switch (vo.kind) {
            case ElementMap::VertexOrigin::Original:
                item = {{"kind", "original"}, {"vertex", vo.original_vertex}};
                break;
            case ElementMap::VertexOrigin::OnEdge:
                item = {{"kind", "on-edge"},
                        {"edge", vo.original_edge},
                        {"segment", vo.segment_index}};
                break;
            case ElementMap::VertexOrigin::SplitLow:
                item = {{"kind", "split-low"}, {"vertex", vo.original_vertex}};
                break;
            case ElementMap::VertexOrigin::SplitHigh:
                item = {{"kind", "split-high"}, {"vertex", vo.original_vertex}};
                break;
        }
        vmap.push_back(item);
    }
    j["vertex_map"] = vmap;
    j["edge_map"] = res.map.edge_origin;
    write_json_file(out_path, j);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_gen(const std::string& kind, int n, uint64_t seed, double pin_fraction, bool embedded,
            bool adversarial, const std::string& out_path) {
    GenOptions opt;
    if (kind == "path") opt.kind = GenOptions::Path;
    else if (kind == "cycle") opt.kind = GenOptions::Cycle;
    else if (kind == "st") opt.kind = GenOptions::St;
    else {
        std::cerr << "unknown kind: " << kind << "\n";
        return 2;
    }
    opt.n = n;
    opt.seed = seed;
    opt.pin_fraction = pin_fraction;
    opt.embedded = embedded;
    opt.adversarial = adversarial;
    UpeInstance inst = generate_instance(opt);
    write_json_file(out_path, instance_to_json(inst));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_draw(const std::string& file, const std::string& out_path, int oracle_cap) {
    UpeInstance inst = read_instance_file(file);
    auto rep = validate_instance(inst);
    if (!rep.ok) {
        std::cerr << "invalid instance: " << rep.error << "\n";
        return 2;
    }
    FullDrawing d;
    if (is_st_graph(inst.graph)) {
        UpeInstance work = inst;
        if (!work.embedding) {
            auto res = solve_st_upe(inst);
            if (res.decision != Decision::Yes) {
                std::cerr << "instance is a NO; nothing to draw\n";
                return 2;
            }
            work.embedding = res.embedding;
        }
        if (solve_st_fue(work) != Decision::Yes) {
            std::cerr << "instance is a NO; nothing to draw\n";
            return 2;
        }
        d = build_witness_drawing_st(work);
    } else if (inst.graph.n <= oracle_cap) {
        auto res = brute_force_decide(inst, {oracle_cap, true});
        if (res.decision != Decision::Yes) {
            std::cerr << "instance is a NO; nothing to draw\n";
            return 2;
        }
        d = *res.witness;
    } else {
        std::cerr << "no witness-producing engine applies (need an st-graph or n <= cap)\n";
        return 2;
    }
    write_svg(out_path, inst, d);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_bench(const std::string& kind, const std::vector<int>& sizes, uint64_t seed,
              const std::string& engine, double pin_fraction, int oracle_cap) {
    std::cout << "kind\tn\tengine\tdecision\tseconds\n";
    for (int n : sizes) {
        GenOptions opt;
        opt.kind = kind == "path" ? GenOptions::Path
                                  : kind == "cycle" ? GenOptions::Cycle : GenOptions::St;
        opt.n = n;
        opt.seed = seed;
        opt.pin_fraction = pin_fraction;
        UpeInstance inst = generate_instance(opt);
        EngineKind ek = parse_engine(engine);
        auto start = std::chrono::steady_clock::now();
        DecideOutcome out = decide(inst, ek, oracle_cap, /*want_witness=*/false);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << kind << "\t" << n << "\t" << engine_name(out.engine) << "\t"
                  << (out.decision == Decision::Yes ? "yes" : "no") << "\t" << secs << "\n";
    }
    return 0;
}

int cmd_oracle_check(const std::string& file, const std::string& cert_file) {
    UpeInstance inst = read_instance_file(file);
    Certificate cert = certificate_from_json(inst, read_json_file(cert_file));
    CheckResult res = check_certificate(inst, cert);
    Json j;
    j["pass"] = res.pass;
    if (!res.pass) {
        j["failed_check"] = res.failed_check;
        j["detail"] = res.detail;
    }
    std::cout << j.dump(1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upex: upward planarity extension toolkit"};
    app.require_subcommand(1);
    int oracle_cap = oracle_cap_from_env(7);

    std::string file, engine = "auto", out_path, which, kind = "path", cert_file;
    bool cross_check = false, embedded = true, adversarial = false, as_olg = false;
    int n = 6;
    int dp_cap = 256;
    uint64_t seed = 1;
    double pin_fraction = 0.5;
    std::vector<int> sizes;

    auto* dec = app.add_subcommand("decide", "decide an instance file");
    dec->add_option("file", file)->required();
    dec->add_option("--engine", engine, "auto|st-fue|st-upe|path-fue|cycle-fue|path-upe|olp|oracle");
    dec->add_flag("--cross-check", cross_check, "run every applicable engine and compare");
    dec->add_option("--dp-cap", dp_cap, "raise the path/cycle table size cap");
    dec->add_flag("--olg", as_olg, "treat the input as an ordered level graph file");

    auto* tr = app.add_subcommand("transform", "apply an instance simplification");
    tr->add_option("file", file)->required();
    tr->add_option("--which", which, "no-partial-edges|distinct-y")->required();
    tr->add_option("--out", out_path)->required();

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--kind", kind, "path|cycle|st");
    gen->add_option("--n", n)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--pin-fraction", pin_fraction);
    gen->add_option("--embedded", embedded);
    gen->add_flag("--adversarial", adversarial);
    gen->add_option("--out", out_path)->required();

    auto* draw = app.add_subcommand("draw", "render a witness drawing as SVG");
    draw->add_option("file", file)->required();
    draw->add_option("--out", out_path)->required();

    auto* bench = app.add_subcommand("bench", "time an engine on generated instances");
    bench->add_option("--kind", kind, "path|cycle|st");
    bench->add_option("--sizes", sizes, "instance sizes")->required();
    bench->add_option("--seed", seed);
    bench->add_option("--engine", engine);
    bench->add_option("--pin-fraction", pin_fraction);
    bench->add_option("--dp-cap", dp_cap);

    auto* oc = app.add_subcommand("oracle-check", "run the certificate checks");
    oc->add_option("file", file)->required();
    oc->add_option("certificate", cert_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        set_dp_size_cap(dp_cap);
        if (*dec) return cmd_decide(file, engine, cross_check, as_olg, oracle_cap);
        if (*tr) return cmd_transform(file, which, out_path);
        if (*gen) return cmd_gen(kind, n, seed, pin_fraction, embedded, adversarial, out_path);
        if (*draw) return cmd_draw(file, out_path, oracle_cap);
        if (*bench) return cmd_bench(kind, sizes, seed, engine, pin_fraction, oracle_cap);
        if (*oc) return cmd_oracle_check(file, cert_file);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
