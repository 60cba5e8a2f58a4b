#include "doctest.h"

#include "json.hpp"
#include "oracles.hpp"
#include "sample_graph.hpp"
#include "scg/report.hpp"

using namespace scg;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t c = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
    return c;
}

}  // namespace

TEST_CASE("report format names") {
    for (auto name : {"txt", "html", "tex", "csv", "json"}) CHECK(extension(*parseReportFormat(name)) == name);
    CHECK_FALSE(parseReportFormat("gml"));
    CHECK(formatFixed(1.0 / 3, 3) == "0.333");
    CHECK(formatFixed(std::numeric_limits<double>::infinity(), 2) == "inf");
}

TEST_CASE("summary json uses the field names and marks undefined assortativity") {
    auto stats = summarize(sample::twoFileGraph());
    auto j = nlohmann::json::parse(renderSummary(stats, ReportFormat::Json));
    CHECK(j["nodeCount"] == stats.nodeCount);
    CHECK(j["edgeCount"] == stats.edgeCount);
    CHECK(j["nodeKindDistribution"]["METHOD"] == 3);  // includes the external stub
    CHECK(j["totalLoc"] == 12 + 7);
    CHECK(j.contains("globalClusteringCoefficient"));
    stats.degreeAssortativity.reset();
    CHECK(nlohmann::json::parse(renderSummary(stats, ReportFormat::Json))["degreeAssortativity"] == "n/a");
    CHECK(renderSummary(stats, ReportFormat::Txt).find("Degree assortativity: n/a") != std::string::npos);
    auto html = renderSummary(stats, ReportFormat::Html);
    CHECK(html.find("<table>") != std::string::npos);
    CHECK(count(html, "class=\"bar\"") == stats.nodeKindDistribution.size() + stats.edgeKindDistribution.size());
    CHECK(renderSummary(stats, ReportFormat::Csv).rfind("metric,value\n", 0) == 0);
}

TEST_CASE("crucial tex is one table with nine metric blocks") {
    auto report = crucial(sample::twoFileGraph(), {3, 0.85, 0.1});
    auto tex = renderCrucial(report, ReportFormat::Tex);
    CHECK(count(tex, "\\begin{tabular}") == 1);
    CHECK(count(tex, "\\multicolumn{2}{c}") == 9);
    CHECK(tex.find("Combined importance") != std::string::npos);
    auto csv = renderCrucial(report, ReportFormat::Csv);
    CHECK(csv.rfind("metric,rank,id,score\n", 0) == 0);
    auto j = nlohmann::json::parse(renderCrucial(report, ReportFormat::Json));
    CHECK(j["rankings"].size() == 9);
    CHECK(j["rankings"][8]["metric"] == "COMBINED");
}

TEST_CASE("latex special characters are escaped") {
    CrucialReport report;
    report.projectName = "my_proj";
    report.n = 1;
    report.rankings.push_back({Metric::Loc, {{"a_b$c&d%e#f{g}", 3}}});
    auto tex = renderCrucial(report, ReportFormat::Tex);
    CHECK(tex.find("a\\_b\\$c\\&d\\%e\\#f\\{g\\}") != std::string::npos);
    CHECK(tex.find("my\\_proj") != std::string::npos);
}

TEST_CASE("partition tex has one row per sweep entry") {
    std::mt19937_64 rng(51);
    auto g = oracle::toScg(50, oracle::randomArcs(50, 0.08, rng));
    auto results = partitionSweep(g, 10);
    auto tex = renderPartitions("synthetic", results, ReportFormat::Tex);
    CHECK(count(tex, "mlv-fm & ") == 9);
    CHECK(count(tex, "mlv-greedy & ") == 9);
    CHECK(count(tex, " \\\\\n") == 19);  // header plus 18 rows
    auto j = nlohmann::json::parse(renderPartitions("synthetic", results, ReportFormat::Json));
    CHECK(j["results"].size() == 18);
    CHECK(j["results"][0]["assignment"].size() == 50);
    auto html = renderPartitions("synthetic", results, ReportFormat::Html, &g);
    CHECK(count(html, "<details>") == 18);
}
