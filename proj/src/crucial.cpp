#include "scg/crucial.hpp"

#include <algorithm>
#include <numeric>

#include "scg/centrality.hpp"
#include "scg/digraph.hpp"
#include "scg/error.hpp"

namespace scg {

namespace {

struct MetricName {
    Metric metric;
    std::string_view id;
    std::string_view title;
};

constexpr MetricName kMetricNames[] = {
    {Metric::Loc, "LOC", "LOC"},
    {Metric::OutDegree, "OUT_DEGREE", "Out-degree"},
    {Metric::InDegree, "IN_DEGREE", "In-degree"},
    {Metric::PageRank, "PAGERANK", "PageRank"},
    {Metric::Eigenvector, "EIGENVECTOR", "Eigenvector"},
    {Metric::Katz, "KATZ", "Katz"},
    {Metric::Betweenness, "BETWEENNESS", "Betweenness"},
    {Metric::Harmonic, "HARMONIC", "Harmonic"},
    {Metric::Combined, "COMBINED", "Combined importance"},
};

bool ranksBefore(const RankEntry& a, const RankEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
}

}  // namespace

std::string_view to_string(Metric m) {
    for (const auto& entry : kMetricNames)
        if (entry.metric == m) return entry.id;
    return "?";
}

std::string_view metricTitle(Metric m) {
    for (const auto& entry : kMetricNames)
        if (entry.metric == m) return entry.title;
    return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (const auto& entry : kMetricNames)
        if (entry.id == name) return entry.metric;
    return std::nullopt;
}

MetricRanking rankTop(Metric metric, const std::vector<std::string>& ids, const Eigen::VectorXd& scores,
                      std::size_t n) {
    std::vector<RankEntry> all(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) all[i] = {ids[i], scores[static_cast<Eigen::Index>(i)]};
    const auto keep = std::min(n, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), ranksBefore);
    all.resize(keep);
    return {metric, std::move(all)};
}

std::map<std::string, int> combinedScores(const std::vector<MetricRanking>& base, std::size_t n) {
    std::map<std::string, int> counts;
    for (const auto& ranking : base) {
        const auto limit = std::min(n, ranking.entries.size());
        for (std::size_t i = 0; i < limit; ++i) ++counts[ranking.entries[i].id];
    }
    return counts;
}

MetricRanking combinedImportance(const std::vector<MetricRanking>& base, std::size_t n) {
    MetricRanking out{Metric::Combined, {}};
    for (const auto& [id, count] : combinedScores(base, n)) out.entries.push_back({id, static_cast<double>(count)});
    std::sort(out.entries.begin(), out.entries.end(), ranksBefore);
    if (out.entries.size() > n) out.entries.resize(n);
    return out;
}

CrucialReport crucial(const SemanticCodeGraph& graph, const CrucialOptions& options) {
    if (options.n == 0) throw UsageError("-n must be at least 1");
    CrucialReport report;
    report.projectName = graph.projectName();
    report.n = options.n;
    const auto indexed = indexGraph(graph, isCodeEntity);
    const auto& g = indexed.graph;
    const auto n = static_cast<Eigen::Index>(g.vertexCount());

    Eigen::VectorXd loc(n), outDeg(n), inDeg(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        const auto u = static_cast<std::size_t>(v);
        loc[v] = indexed.nodes[u]->loc;
        outDeg[v] = static_cast<double>(g.outDegree(u));
        inDeg[v] = static_cast<double>(g.inDegree(u));
    }
    auto pr = n ? pageRank(g, options.damping) : CentralityResult{};
    auto ev = n ? eigenvectorCentrality(g) : CentralityResult{};
    auto katz = n ? katzCentrality(g, options.katzAlpha) : CentralityResult{};
    report.katzAlphaUsed = n ? katz.parameter : options.katzAlpha;
    if (!pr.converged) report.warnings.push_back("PageRank did not converge");
    if (!ev.converged) report.warnings.push_back("eigenvector centrality did not converge");
    if (!katz.converged) report.warnings.push_back("Katz centrality did not converge");
    if (n && katz.parameter != options.katzAlpha)
        report.warnings.push_back("Katz alpha reduced to " + std::to_string(katz.parameter));

    const std::pair<Metric, Eigen::VectorXd> scores[] = {
        {Metric::Loc, loc},
        {Metric::OutDegree, outDeg},
        {Metric::InDegree, inDeg},
        {Metric::PageRank, pr.scores},
        {Metric::Eigenvector, ev.scores},
        {Metric::Katz, katz.scores},
        {Metric::Betweenness, betweennessCentrality(g)},
        {Metric::Harmonic, harmonicCentrality(g)},
    };
    for (const auto& [metric, vec] : scores)
        report.rankings.push_back(rankTop(metric, indexed.ids, vec, options.n));
    report.rankings.push_back(combinedImportance(report.rankings, options.n));
    return report;
}

}  // namespace scg
