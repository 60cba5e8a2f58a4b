#include "scg/summary.hpp"

#include <algorithm>
#include <cmath>

namespace scg {

double density(const Digraph& g) {
    const auto n = static_cast<double>(g.vertexCount());
    if (n < 2) return 0.0;
    return static_cast<double>(g.arcCount()) / (n * (n - 1));
}

double transitivity(const Adjacency& adj) {
    // Each triangle is seen once per corner; each corner contributes its
    // closed wedges, so the ratio of closed to all wedges is the transitivity.
    long double closed = 0;
    long double wedges = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        const auto& nv = adj[v];
        const auto d = static_cast<long double>(nv.size());
        wedges += d * (d - 1) / 2;
        for (std::size_t i = 0; i < nv.size(); ++i) {
            const auto& nu = adj[nv[i]];
            for (std::size_t j = i + 1; j < nv.size(); ++j)
                if (std::binary_search(nu.begin(), nu.end(), nv[j])) closed += 1;
        }
    }
    if (wedges == 0) return 0.0;
    return static_cast<double>(closed / wedges);
}

std::optional<double> degreeAssortativity(const Adjacency& adj) {
    long double sum = 0;
    std::size_t count = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        sum += static_cast<long double>(adj[u].size()) * adj[u].size();
        count += adj[u].size();
    }
    if (count == 0) return std::nullopt;
    // Both endpoint sequences have the same distribution, so one mean and one
    // variance serve for x and y.
    const long double mean = sum / count;
    long double var = 0;
    long double cov = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        const long double du = adj[u].size() - mean;
        for (auto v : adj[u]) {
            const long double dv = adj[v].size() - mean;
            var += du * du;
            cov += du * dv;
        }
    }
    if (var <= 1e-12L * count) return std::nullopt;
    return static_cast<double>(std::clamp(cov / var, -1.0L, 1.0L));
}

SummaryStats summarize(const SemanticCodeGraph& graph) {
    SummaryStats s;
    s.projectName = graph.projectName();
    s.nodeCount = graph.nodeCount();
    s.edgeCount = graph.edgeCount();
    for (auto kind : kAllNodeKinds) s.nodeKindDistribution[std::string(to_string(kind))] = 0;
    for (auto kind : kAllEdgeKinds) s.edgeKindDistribution[std::string(to_string(kind))] = 0;
    for (const auto& [id, node] : graph.nodes()) {
        ++s.nodeKindDistribution[std::string(to_string(node.kind))];
        if (node.kind == NodeKind::File) s.totalLoc += node.loc;
    }
    for (const auto& e : graph.edges()) ++s.edgeKindDistribution[e.type];

    const auto indexed = indexGraph(graph);
    s.density = density(indexed.graph);
    if (s.nodeCount > 0) {
        s.avgInDegree = static_cast<double>(s.edgeCount) / static_cast<double>(s.nodeCount);
        s.avgOutDegree = s.avgInDegree;
    }
    const auto adj = indexed.graph.undirectedAdjacency();
    s.globalClusteringCoefficient = transitivity(adj);
    s.degreeAssortativity = degreeAssortativity(adj);
    return s;
}

}  // namespace scg
