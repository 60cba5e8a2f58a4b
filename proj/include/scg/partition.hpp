#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scg/model.hpp"
#include "scg/summary.hpp"

namespace scg {

inline constexpr std::string_view kAlgorithmFm = "mlv-fm";
inline constexpr std::string_view kAlgorithmGreedy = "mlv-greedy";
inline constexpr std::string_view kAlgorithms[] = {kAlgorithmFm, kAlgorithmGreedy};

struct PartitionOptions {
    double epsilon = 0.30;
    std::uint64_t seed = 0;
    bool refine = true;  // FM refinement during uncoarsening
    int initialTries = 4;
};

/// Largest partition size allowed for n unit-weight vertices.
std::size_t balanceCap(std::size_t n, int k, double epsilon);

/// Multilevel k-way partitioning of an undirected simple graph: heavy-edge
/// matching, greedy graph growing, then FM refinement while uncoarsening.
/// Every index in [0, k) is used when k <= n.
std::vector<int> partitionGraph(const Adjacency& adj, int k, const PartitionOptions& options = {});

/// Undirected edges whose endpoints lie in different partitions.
std::size_t cutSize(const Adjacency& adj, const std::vector<int>& part);

/// Population variance of the sizes divided by the squared mean size.
double partitionVariance(const std::vector<double>& sizes);

struct QualityScores {
    std::size_t internalEdges = 0;
    std::size_t cutEdges = 0;
    double modularityRatio = 0.0;  // +infinity when nothing is cut
    double avgClusteringCoefficient = 0.0;
    double fileWeightedAccuracy = 0.0;
    double fileAverageAccuracy = 0.0;
    double packageWeightedAccuracy = 0.0;
    double packageAverageAccuracy = 0.0;
    double partitionVariance = 0.0;
    std::vector<std::size_t> sizes;
    std::vector<double> distributionPercent;
};

/// Per-vertex file and package unit; vertices with counted == false (stubs)
/// belong to no unit.
struct UnitLabels {
    std::vector<std::string> file;
    std::vector<std::string> package;
    std::vector<char> counted;
};

QualityScores scorePartition(const Adjacency& adj, const std::vector<int>& part, int k, const UnitLabels& units);

struct PartitionResult {
    std::string algorithm;
    int k = 0;
    std::vector<std::string> ids;  // code entities, in id order
    std::vector<int> assignment;   // aligned with ids
    QualityScores quality;
};

PartitionResult partition(const SemanticCodeGraph& graph, int k, std::string_view algorithm,
                          PartitionOptions options = {});

/// Every k in [2, maxK] for each algorithm variant, ordered by k then algorithm.
std::vector<PartitionResult> partitionSweep(const SemanticCodeGraph& graph, int maxK, PartitionOptions options = {});

}  // namespace scg
