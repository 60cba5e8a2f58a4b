#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scg/digraph.hpp"
#include "scg/model.hpp"

namespace scg {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SummaryStats {
    std::string projectName;
    std::size_t nodeCount = 0;
    std::size_t edgeCount = 0;
    long long totalLoc = 0;
    std::map<std::string, std::size_t> nodeKindDistribution;
    std::map<std::string, std::size_t> edgeKindDistribution;
    double density = 0.0;
    double avgInDegree = 0.0;
    double avgOutDegree = 0.0;
    double globalClusteringCoefficient = 0.0;
    std::optional<double> degreeAssortativity;  // undefined when degree variance is zero
};

/// m / (n (n - 1)) over the directed simple graph; 0 for n < 2.
double density(const Digraph& g);

/// 3 * triangles / connected triples on an undirected simple adjacency
/// (sorted, no self-loops); 0 when there are no triples.
double transitivity(const Adjacency& adj);

/// Pearson correlation of endpoint degrees over undirected edges, each edge
/// counted in both directions.
std::optional<double> degreeAssortativity(const Adjacency& adj);

SummaryStats summarize(const SemanticCodeGraph& graph);

}  // namespace scg
