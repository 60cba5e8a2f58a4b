#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/graphml.hpp>
#include <boost/graph/graphviz.hpp>

#include "graphml_check.hpp"
#include "oracles.hpp"
#include "sample_graph.hpp"
#include "scg/error.hpp"
#include "scg/export.hpp"
#include "scg/storage.hpp"

using namespace scg;
namespace fs = std::filesystem;

namespace {

struct VertexProps {
    std::string name, label, kind, package, file;
    int loc = 0;
};
struct EdgeProps {
    std::string type;
};
using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS, VertexProps, EdgeProps>;

SemanticCodeGraph trickyGraph() {
    auto g = sample::twoFileGraph();
    g.addEdge({"p.A.run().", "we\"ird,<id>&'x", "REFERENCE", std::nullopt});
    return g;
}

std::multiset<std::tuple<std::string, std::string, std::string>> edgeSet(const SemanticCodeGraph& g) {
    std::multiset<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : g.edges()) out.emplace(e.from, e.to, e.type);
    return out;
}

std::multiset<std::tuple<std::string, std::string, std::string>> edgeSet(const BoostGraph& g,
                                                                         const std::string VertexProps::*id) {
    std::multiset<std::tuple<std::string, std::string, std::string>> out;
    for (auto [it, end] = boost::edges(g); it != end; ++it)
        out.emplace(g[boost::source(*it, g)].*id, g[boost::target(*it, g)].*id, g[*it].type);
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("format names") {
    CHECK(parseGraphFormat("graphml") == GraphFormat::GraphMl);
    CHECK_FALSE(parseGraphFormat("svg"));
    CHECK(extension(GraphFormat::Gdf) == "gdf");
}

TEST_CASE("graphml conforms structurally and reparses with Boost") {
    auto g = trickyGraph();
    std::ostringstream out;
    writeGraphMl(out, g);
    auto problems = graphml::structuralProblems(out.str());
    for (const auto& p : problems) MESSAGE(p);
    CHECK(problems.empty());

    BoostGraph bg;
    boost::dynamic_properties dp(boost::ignore_other_properties);
    dp.property("label", boost::get(&VertexProps::label, bg));
    dp.property("kind", boost::get(&VertexProps::kind, bg));
    dp.property("loc", boost::get(&VertexProps::loc, bg));
    dp.property("file", boost::get(&VertexProps::file, bg));
    dp.property("type", boost::get(&EdgeProps::type, bg));
    std::istringstream in(out.str());
    boost::read_graphml(in, bg, dp);
    CHECK(boost::num_vertices(bg) == g.nodeCount());
    CHECK(boost::num_edges(bg) == g.edgeCount());
    // Boost keeps vertices in document order, which is node-id order.
    std::size_t i = 0;
    std::map<std::size_t, std::string> ids;
    for (const auto& [id, n] : g.nodes()) {
        CHECK(bg[i].label == n.displayName);
        CHECK(bg[i].kind == to_string(n.kind));
        CHECK(bg[i].loc == n.loc);
        CHECK(bg[i].file == n.fileUri);
        bg[i].name = id;
        ++i;
    }
    CHECK(edgeSet(bg, &VertexProps::name) == edgeSet(g));
}

TEST_CASE("dot reparses with Boost") {
    auto g = trickyGraph();
    std::ostringstream out;
    writeDot(out, g);
    BoostGraph bg;
    boost::dynamic_properties dp(boost::ignore_other_properties);
    dp.property("node_id", boost::get(&VertexProps::name, bg));
    dp.property("kind", boost::get(&VertexProps::kind, bg));
    dp.property("package", boost::get(&VertexProps::package, bg));
    dp.property("label", boost::get(&EdgeProps::type, bg));
    std::istringstream in(out.str());
    REQUIRE(boost::read_graphviz(in, bg, dp));
    CHECK(boost::num_vertices(bg) == g.nodeCount());
    CHECK(edgeSet(bg, &VertexProps::name) == edgeSet(g));
    for (auto [it, end] = boost::vertices(bg); it != end; ++it) {
        const auto* n = g.find(bg[*it].name);
        REQUIRE(n);
        CHECK(bg[*it].kind == to_string(n->kind));
        CHECK(bg[*it].package == n->packageName);
    }
}

TEST_CASE("gdf has one row per node and edge") {
    auto g = trickyGraph();
    std::ostringstream out;
    writeGdf(out, g);
    auto rows = lines(out.str());
    REQUIRE(rows.size() == g.nodeCount() + g.edgeCount() + 2);
    CHECK(rows[0] == "nodedef>name VARCHAR,label VARCHAR,kind VARCHAR,loc INTEGER,package VARCHAR,file VARCHAR");
    CHECK(rows[g.nodeCount() + 1] == "edgedef>node1 VARCHAR,node2 VARCHAR,type VARCHAR,directed BOOLEAN");
    CHECK(out.str().find("\"p.B\",\"p.A\",\"EXTEND\",true") != std::string::npos);
    CHECK(out.str().find("\"we\"\"ird,<id>&'x\"") != std::string::npos);
}

TEST_CASE("gml carries partition attributes") {
    auto g = sample::twoFileGraph();
    auto results = partitionSweep(g, 3);
    std::ostringstream out;
    writeGml(out, g, results);
    auto text = out.str();
    CHECK(text.rfind("graph [\n  directed 1\n", 0) == 0);
    auto count = [&](const std::string& needle) {
        std::size_t c = 0;
        for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
        return c;
    };
    CHECK(count("  node [\n") == g.nodeCount());
    CHECK(count("  edge [\n") == g.edgeCount());
    CHECK(count("    npart_3_mlv_fm ") == g.nodeCount());
    CHECK(count("    npart_2_mlv_greedy ") == g.nodeCount());
    // FILE nodes are not partitioned
    CHECK(count("    npart_2_mlv_fm -1\n") == 2);
}

TEST_CASE("partition csv has one row per assigned node") {
    std::mt19937_64 rng(41);
    auto g = oracle::toScg(40, oracle::randomArcs(40, 0.1, rng), "proj");
    auto results = partitionSweep(g, 4);
    auto dir = sample::tempDir("csv");
    auto paths = exportPartitionCsv("proj", results, dir);
    REQUIRE(paths.size() == 6);
    CHECK(paths[0].filename() == "proj-npart-2-mlv-fm.csv");
    CHECK(paths[1].filename() == "proj-npart-2-mlv-greedy.csv");
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::ifstream in(paths[i]);
        std::ostringstream ss;
        ss << in.rdbuf();
        auto rows = lines(ss.str());
        CHECK(rows.front() == "id,npart");
        CHECK(rows.size() - 1 == results[i].assignment.size());
    }
    fs::remove_all(dir);
}

TEST_CASE("jupyter bundle layout") {
    auto ws = sample::tempDir("bundle-ws");
    auto g = sample::twoFileGraph();
    auto out = sample::tempDir("bundle-out");
    CHECK_THROWS_AS(exportJupyterBundle(g, ws, out), DataError);
    saveGraph(g, ws);
    auto bundle = exportJupyterBundle(g, ws, out);
    CHECK(bundle == out / "demo-jupyter");
    CHECK(fs::exists(bundle / "scg" / "__init__.py"));
    CHECK(fs::exists(bundle / "analysis.ipynb"));
    CHECK(fs::exists(bundle / "README.md"));
    CHECK(listRecordFiles(bundle / "demo" / ".semanticgraphs").size() == 2);
    std::size_t csvs = 0;
    for (const auto& entry : fs::directory_iterator(bundle)) csvs += entry.path().extension() == ".csv";
    CHECK(csvs == 1);
    CHECK(notebookHelperSource().find("def read_scg") != std::string_view::npos);
    fs::remove_all(ws);
    fs::remove_all(out);
}

TEST_CASE("graphml checker rejects broken documents") {
    CHECK_FALSE(graphml::structuralProblems("<graphml>").empty());
    CHECK_FALSE(graphml::structuralProblems(
                    "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"><graph edgedefault=\"directed\">"
                    "<node id=\"a\"/><edge source=\"a\" target=\"b\"/></graph></graphml>")
                    .empty());
    CHECK_FALSE(graphml::structuralProblems(
                    "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">"
                    "<key id=\"k\" for=\"node\" attr.name=\"loc\" attr.type=\"int\"/><graph edgedefault=\"directed\">"
                    "<node id=\"a\"><data key=\"k\">many</data></node></graph></graphml>")
                    .empty());
}
