#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/builders.hpp"
#include "upex/engine.hpp"
#include "upex/generate.hpp"
#include "upex/stgraph.hpp"
#include "upex/jsonio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace upex;
using namespace upex::testsupport;

namespace {

#ifndef UPEX_CLI_PATH
#define UPEX_CLI_PATH "upex"
#endif

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(UPEX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string tmp_file(const std::string& name) { return "/tmp/upex_test_" + name; }

}  // namespace

TEST_CASE("gen: identical seeds give byte-identical files") {
    auto f1 = tmp_file("det1.json"), f2 = tmp_file("det2.json");
    for (const char* kind : {"path", "cycle", "st"}) {
        auto r1 = run_cli(std::string("gen --kind ") + kind + " --n 9 --seed 17 --out " + f1);
        auto r2 = run_cli(std::string("gen --kind ") + kind + " --n 9 --seed 17 --out " + f2);
        CHECK(r1.status == 0);
        CHECK(r2.status == 0);
        CHECK(slurp(f1) == slurp(f2));
        CHECK(slurp(f1) != "");
    }
}

TEST_CASE("gen: rejects degenerate sizes") {
    auto r = run_cli("gen --kind path --n 1 --out " + tmp_file("bad.json"));
    CHECK(r.status == 2);
}

TEST_CASE("gen: full pin fraction gives YES instances under the matching engine") {
    for (uint64_t seed : {1, 2, 3, 4, 5}) {
        for (auto [kind, engine] : std::vector<std::pair<GenOptions::Kind, EngineKind>>{
                 {GenOptions::St, EngineKind::StFue},
                 {GenOptions::Path, EngineKind::PathFue},
                 {GenOptions::Cycle, EngineKind::CycleFue}}) {
            GenOptions opt;
            opt.kind = kind;
            opt.n = 10;
            opt.seed = seed;
            opt.pin_fraction = 1.0;
            UpeInstance inst = generate_instance(opt);
            REQUIRE(validate_instance(inst).ok);
            auto out = decide(inst, engine, 7, false);
            CHECK(out.decision == Decision::Yes);
        }
    }
}

TEST_CASE("gen: unembedded st instances satisfy the variable-embedding engine") {
    for (uint64_t seed : {7, 8, 9}) {
        GenOptions opt;
        opt.kind = GenOptions::St;
        opt.n = 9;
        opt.seed = seed;
        opt.pin_fraction = 1.0;
        opt.embedded = false;
        UpeInstance inst = generate_instance(opt);
        REQUIRE(validate_instance(inst).ok);
        CHECK(decide(inst, EngineKind::StUpe, 7, false).decision == Decision::Yes);
    }
}

TEST_CASE("decide: reports the engine and exits 0 on both answers") {
    auto yes = tmp_file("yes.json");
    write_json_file(yes, instance_to_json(
                             InstanceBuilder(2).edge(0, 1).pin(0, pt(0, 0)).pin(1, pt(0, 1)).build()));
    auto r = run_cli("decide " + yes);
    CHECK(r.status == 0);
    CHECK(r.out.find("\"yes\"") != std::string::npos);

    auto no = tmp_file("no.json");
    write_json_file(no, instance_to_json(
                            InstanceBuilder(2).edge(0, 1).pin(0, pt(0, 1)).pin(1, pt(0, 0)).build()));
    r = run_cli("decide " + no);
    CHECK(r.status == 0);
    CHECK(r.out.find("\"no\"") != std::string::npos);
}

TEST_CASE("decide: oracle cap exceeded is an error") {
    GenOptions opt;
    opt.kind = GenOptions::Path;
    opt.n = 20;
    opt.seed = 3;
    auto file = tmp_file("big.json");
    write_json_file(file, instance_to_json(generate_instance(opt)));
    auto r = run_cli("decide " + file + " --engine oracle");
    CHECK(r.status == 2);
}

TEST_CASE("transform: writes a valid transformed instance plus the map") {
    auto inst = InstanceBuilder(2)
                    .edge(0, 1)
                    .pin(0, pt(0, 0))
                    .pin(1, pt(0, 2))
                    .pin_edge(0, 1, {pt(0, 0), pt(1, 1), pt(0, 2)})
                    .build();
    auto in = tmp_file("tr_in.json"), out = tmp_file("tr_out.json");
    write_json_file(in, instance_to_json(inst));
    auto r = run_cli("transform " + in + " --which no-partial-edges --out " + out);
    CHECK(r.status == 0);
    Json j = read_json_file(out);
    UpeInstance tr = instance_from_json(j.at("instance"));
    CHECK(validate_instance(tr).ok);
    CHECK(tr.partial_edges.empty());
    CHECK(tr.graph.n == 3);
    CHECK(j.at("vertex_map").size() == 3);
}

TEST_CASE("draw: SVG metadata carries the exact witness drawing") {
    GenOptions opt;
    opt.kind = GenOptions::St;
    opt.n = 8;
    opt.seed = 11;
    opt.pin_fraction = 0.7;
    UpeInstance inst = generate_instance(opt);
    auto file = tmp_file("draw.json"), svg = tmp_file("draw.svg");
    write_json_file(file, instance_to_json(inst));
    auto r = run_cli("draw " + file + " --out " + svg);
    REQUIRE(r.status == 0);
    std::string content = slurp(svg);
    auto from = content.find("<metadata id=\"upex-drawing\">");
    REQUIRE(from != std::string::npos);
    from += std::string("<metadata id=\"upex-drawing\">").size();
    auto to = content.find("</metadata>", from);
    REQUIRE(to != std::string::npos);
    Json j = Json::parse(content.substr(from, to - from));
    FullDrawing d = drawing_from_json(j);
    CHECK(verify_drawing(inst, d).accepted());
    CHECK(content.find("<polyline") != std::string::npos);
    CHECK(content.find("<circle") != std::string::npos);
}

TEST_CASE("draw: NO instance exits 2") {
    auto no = tmp_file("no2.json");
    write_json_file(no, instance_to_json(
                            InstanceBuilder(2).edge(0, 1).pin(0, pt(0, 1)).pin(1, pt(0, 0)).build()));
    auto r = run_cli("draw " + no + " --out " + tmp_file("no2.svg"));
    CHECK(r.status == 2);
}

TEST_CASE("oracle-check: reports the failed check index") {
    auto inst = InstanceBuilder(2).edge(0, 1).build();
    auto f = tmp_file("oc.json"), c = tmp_file("oc_cert.json");
    write_json_file(f, instance_to_json(inst));
    Json cert;
    cert["y"] = {{"0", 0}, {"1", 1}};
    cert["sigma"] = Json::array({Json::array({Json::array({"v", 0})}),
                                 Json::array({Json::array({"v", 1})})});
    write_json_file(c, cert);
    auto r = run_cli("oracle-check " + f + " " + c);
    CHECK(r.status == 0);
    CHECK(r.out.find("true") != std::string::npos);

    cert["y"] = {{"0", 1}, {"1", 0}};
    cert["sigma"] = Json::array({Json::array({Json::array({"v", 1})}),
                                 Json::array({Json::array({"v", 0})})});
    write_json_file(c, cert);
    r = run_cli("oracle-check " + f + " " + c);
    CHECK(r.status == 0);
    CHECK(r.out.find("\"failed_check\": 1") != std::string::npos);
}

TEST_CASE("bench: prints one row per size") {
    auto r = run_cli("bench --kind path --sizes 6 8 --engine path-fue --seed 2");
    CHECK(r.status == 0);
    int rows = 0;
    std::stringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind("path\t", 0) == 0) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("engine: auto dispatch order") {
    auto st = diamond().embed(diamond_embedding_ab().succ, diamond_embedding_ab().pred).build();
    CHECK(select_engine(st, 7) == EngineKind::StFue);
    CHECK(select_engine(without_embedding(st), 7) == EngineKind::StUpe);

    GenOptions opt;
    opt.kind = GenOptions::Cycle;
    opt.n = 6;
    opt.seed = 1;
    auto cyc = generate_instance(opt);
    CHECK(select_engine(cyc, 7) == EngineKind::CycleFue);
    CHECK(select_engine(without_embedding(cyc), 7) == EngineKind::PathUpe);

    // Zigzag path is not an st-graph: embedded goes to the path DP.
    opt.kind = GenOptions::Path;
    opt.n = 6;
    opt.seed = 12;
    auto pth = generate_instance(opt);
    if (is_st_graph(pth.graph)) {
        CHECK(select_engine(pth, 7) == EngineKind::StFue);
    } else {
        CHECK(select_engine(pth, 7) == EngineKind::PathFue);
    }

    // Full edgeless pins with distinct heights on a non-path graph: olp.
    UpeInstance olp;
    olp.graph.n = 4;
    olp.graph.edges = {{0, 1}, {0, 2}, {0, 3}};
    olp.partial_vertices = {0, 1, 2, 3};
    olp.drawing.vertex_pos[0] = pt(0, 0);
    olp.drawing.vertex_pos[1] = pt(1, 1);
    olp.drawing.vertex_pos[2] = pt(2, 2);
    olp.drawing.vertex_pos[3] = pt(3, 3);
    CHECK(select_engine(olp, 7) == EngineKind::Olp);

    // Nothing applies but the oracle.
    UpeInstance hard;
    hard.graph.n = 5;
    hard.graph.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}};
    CHECK(select_engine(hard, 7) == EngineKind::Oracle);
    CHECK_THROWS(select_engine(hard, 3));
}

TEST_CASE("engine: cross-checked decisions agree on random instances") {
    std::mt19937_64 rng(864);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        GenOptions opt;
        opt.kind = trial % 3 == 0 ? GenOptions::St
                                  : (trial % 3 == 1 ? GenOptions::Path : GenOptions::Cycle);
        opt.n = 4 + (int)(rng() % 3);
        opt.seed = rng();
        opt.pin_fraction = 0.6;
        opt.adversarial = trial % 2 == 0;
        opt.embedded = trial % 4 < 2;
        UpeInstance inst = generate_instance(opt);
        if (!validate_instance(inst).ok) continue;
        decide_cross_checked(inst, 7);  // throws on disagreement
        ++checked;
    }
    CHECK(checked > 80);
}

TEST_CASE("decide: UPEX_ORACLE_CAP lowers the oracle cap") {
    auto f = tmp_file("cap.json");
    UpeInstance inst;
    inst.graph.n = 5;
    inst.graph.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}};
    write_json_file(f, instance_to_json(inst));
    auto ok = run_cli("decide " + f + " --engine oracle");
    CHECK(ok.status == 0);
    std::string cmd = std::string("UPEX_ORACLE_CAP=3 ") + UPEX_CLI_PATH + " decide " + f +
                      " --engine oracle 2>/dev/null";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}
