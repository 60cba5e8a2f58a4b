#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "scg/model.hpp"

namespace scg {

enum class Metric { Loc, OutDegree, InDegree, PageRank, Eigenvector, Katz, Betweenness, Harmonic, Combined };

inline constexpr Metric kBaseMetrics[] = {
    Metric::Loc,         Metric::OutDegree, Metric::InDegree,    Metric::PageRank,
    Metric::Eigenvector, Metric::Katz,      Metric::Betweenness, Metric::Harmonic,
};

std::string_view to_string(Metric m);
/// Human-readable title, e.g. "PageRank".
std::string_view metricTitle(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

struct RankEntry {
    std::string id;
    double score = 0.0;
};

struct MetricRanking {
    Metric metric = Metric::Loc;
    std::vector<RankEntry> entries;  // score descending, ties by id ascending
};

/// Top-n of a score vector aligned with `ids`.
MetricRanking rankTop(Metric metric, const std::vector<std::string>& ids, const Eigen::VectorXd& scores,
                      std::size_t n);

/// For every id in any base ranking: how many of the base rankings list it
/// within their first n entries.
std::map<std::string, int> combinedScores(const std::vector<MetricRanking>& base, std::size_t n);

/// Ranking by combinedScores, truncated to n.
MetricRanking combinedImportance(const std::vector<MetricRanking>& base, std::size_t n);

struct CrucialOptions {
    std::size_t n = 10;
    double damping = 0.85;
    double katzAlpha = 0.1;
};

struct CrucialReport {
    std::string projectName;
    std::size_t n = 0;
    std::vector<MetricRanking> rankings;  // the eight base metrics, then Combined
    double katzAlphaUsed = 0.0;
    std::vector<std::string> warnings;
};

/// Ranks code entities (FILE nodes excluded) by all nine metrics.
CrucialReport crucial(const SemanticCodeGraph& graph, const CrucialOptions& options = {});

}  // namespace scg
