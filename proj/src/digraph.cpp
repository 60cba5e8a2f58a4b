#include "scg/digraph.hpp"

#include <algorithm>
#include <unordered_map>

namespace scg {

namespace {

void sortUnique(std::vector<Digraph::Vertex>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Digraph::Digraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& arcs) : out_(n), in_(n) {
    for (auto [u, v] : arcs) {
        if (u == v) continue;
        out_[u].push_back(v);
    }
    for (Vertex u = 0; u < n; ++u) {
        sortUnique(out_[u]);
        arcs_ += out_[u].size();
        for (auto v : out_[u]) in_[v].push_back(u);
    }
}

std::vector<std::vector<Digraph::Vertex>> Digraph::undirectedAdjacency() const {
    std::vector<std::vector<Vertex>> adj(vertexCount());
    for (Vertex u = 0; u < vertexCount(); ++u) {
        adj[u] = out_[u];
        adj[u].insert(adj[u].end(), in_[u].begin(), in_[u].end());
        sortUnique(adj[u]);
    }
    return adj;
}

IndexedGraph indexGraph(const SemanticCodeGraph& scg, const NodeFilter& keep) {
    IndexedGraph out;
    std::unordered_map<std::string_view, Digraph::Vertex> index;
    for (const auto& [id, node] : scg.nodes()) {
        if (keep && !keep(node)) continue;
        index.emplace(id, out.ids.size());
        out.ids.push_back(id);
        out.nodes.push_back(&node);
    }
    std::vector<std::pair<Digraph::Vertex, Digraph::Vertex>> arcs;
    arcs.reserve(scg.edgeCount());
    for (const auto& e : scg.edges()) {
        auto from = index.find(e.from);
        auto to = index.find(e.to);
        if (from == index.end() || to == index.end()) continue;
        arcs.emplace_back(from->second, to->second);
    }
    out.graph = Digraph(out.ids.size(), arcs);
    return out;
}

}  // namespace scg
