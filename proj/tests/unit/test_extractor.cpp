#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "scg/extractor.hpp"

using namespace scg;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = fs::path(SCG_FIXTURES) / "corpus";

struct Expected {
    std::set<std::pair<std::string, std::string>> nodes;  // (kind, id)
    std::set<std::string> stubs;
    std::set<std::tuple<std::string, std::string, std::string>> edges;  // (type, from, to)
};

Expected loadExpected(const fs::path& p) {
    Expected out;
    std::ifstream in(p);
    REQUIRE(in);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "N") {
            std::string kind, id;
            ss >> kind >> id;
            out.nodes.emplace(kind, id);
        } else if (tag == "S") {
            std::string id;
            ss >> id;
            out.stubs.insert(id);
        } else if (tag == "E") {
            std::string type, from, arrow, to;
            ss >> type >> from >> arrow >> to;
            REQUIRE(arrow == "->");
            out.edges.emplace(type, from, to);
        }
    }
    return out;
}

Expected actual(const SemanticCodeGraph& g) {
    Expected out;
    for (const auto& [id, n] : g.nodes()) {
        if (n.isStub())
            out.stubs.insert(id);
        else
            out.nodes.emplace(std::string(to_string(n.kind)), id);
    }
    for (const auto& e : g.edges()) out.edges.emplace(e.type, e.from, e.to);
    return out;
}

template <class Set>
std::string difference(const Set& a, const Set& b, const char* label) {
    std::ostringstream ss;
    for (const auto& x : a) {
        if (b.contains(x)) continue;
        ss << label << ' ';
        if constexpr (std::is_same_v<typename Set::value_type, std::string>)
            ss << x;
        else if constexpr (std::tuple_size_v<typename Set::value_type> == 2)
            ss << std::get<0>(x) << ' ' << std::get<1>(x);
        else
            ss << std::get<0>(x) << ' ' << std::get<1>(x) << " -> " << std::get<2>(x);
        ss << '\n';
    }
    return ss.str();
}

}  // namespace

TEST_CASE("corpus has 25 sources") { CHECK(collectJavaFiles(kCorpus).size() == 25); }

TEST_CASE("corpus graph matches the hand-written expectation") {
    auto result = extractProject(kCorpus);
    CHECK(result.report.filesParsed == 25);
    CHECK(result.report.filesFailed == 0);
    for (const auto& f : result.report.failures) MESSAGE(f);
    CHECK_NOTHROW(result.graph.validate());

    auto want = loadExpected(kCorpus / "expected.txt");
    auto got = actual(result.graph);

    auto nodeDiff = difference(want.nodes, got.nodes, "missing") + difference(got.nodes, want.nodes, "extra");
    auto stubDiff = difference(want.stubs, got.stubs, "missing") + difference(got.stubs, want.stubs, "extra");
    auto edgeDiff = difference(want.edges, got.edges, "missing") + difference(got.edges, want.edges, "extra");
    CHECK_MESSAGE(nodeDiff.empty(), nodeDiff);
    CHECK_MESSAGE(stubDiff.empty(), stubDiff);
    CHECK_MESSAGE(edgeDiff.empty(), edgeDiff);
}

TEST_CASE("declared nodes carry locations, files and packages") {
    auto g = extractProject(kCorpus).graph;
    const auto* file = g.find("src/shapes/Circle.java");
    REQUIRE(file);
    CHECK(file->loc == 14);
    CHECK(file->packageName == "shapes");

    const auto* circle = g.find("shapes.Circle");
    REQUIRE(circle);
    REQUIRE(circle->location);
    CHECK(circle->location->startLine == 2);
    CHECK(circle->location->endLine == 13);
    CHECK(circle->loc == 12);
    CHECK(circle->fileUri == "src/shapes/Circle.java");
    CHECK(circle->displayName == "Circle");

    const auto* launcher = g.find("Launcher");
    REQUIRE(launcher);
    CHECK(launcher->packageName.empty());

    for (const auto& [id, n] : g.nodes())
        if (!n.isStub()) CHECK_MESSAGE(n.location.has_value(), id);
}

TEST_CASE("extraction is deterministic") {
    auto a = extractProject(kCorpus).graph;
    auto b = extractProject(kCorpus).graph;
    CHECK(a.canonicalDump() == b.canonicalDump());
}

TEST_CASE("syntax errors are reported per file and do not stop extraction") {
    std::vector<SourceFile> files{
        {"src/ok/A.java", "package ok;\nclass A { void m() {} }\n"},
        {"src/bad/B.java", "package bad;\nclass B { void m( }\n"},
    };
    auto r = extractSources(files, "mixed");
    CHECK(r.report.filesParsed == 1);
    CHECK(r.report.filesFailed == 1);
    REQUIRE(r.report.failures.size() == 1);
    CHECK(r.report.failures[0].rfind("src/bad/B.java:", 0) == 0);
    CHECK(r.graph.contains("ok.A.m()."));
    CHECK_FALSE(r.graph.contains("src/bad/B.java"));
}

TEST_CASE("wildcard imports of external packages stay unresolved") {
    std::vector<SourceFile> files{
        {"src/p/A.java", "package p;\nimport java.util.*;\nclass A { List<String> xs; }\n"},
    };
    auto r = extractSources(files, "w");
    CHECK_FALSE(r.graph.contains("java.util.List"));
    CHECK(r.graph.find("p.A.xs.") != nullptr);
}
