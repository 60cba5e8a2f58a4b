#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scg/model.hpp"

namespace scg {

/// Compact directed simple graph over vertices 0..n-1: parallel edges are
/// merged and self-loops dropped. Adjacency lists are sorted.
class Digraph {
public:
    using Vertex = std::size_t;

    Digraph() = default;
    Digraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& arcs);

    std::size_t vertexCount() const noexcept { return out_.size(); }
    std::size_t arcCount() const noexcept { return arcs_; }

    const std::vector<Vertex>& successors(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& predecessors(Vertex v) const { return in_[v]; }
    std::size_t outDegree(Vertex v) const { return out_[v].size(); }
    std::size_t inDegree(Vertex v) const { return in_[v].size(); }

    /// Undirected simplification: neighbours in either direction, deduplicated.
    std::vector<std::vector<Vertex>> undirectedAdjacency() const;

private:
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::size_t arcs_ = 0;
};

/// A Digraph over a subset of SCG nodes together with the id of each vertex.
/// Vertices follow node-id order.
struct IndexedGraph {
    Digraph graph;
    std::vector<std::string> ids;
    std::vector<const SemanticNode*> nodes;
};

using NodeFilter = std::function<bool(const SemanticNode&)>;

IndexedGraph indexGraph(const SemanticCodeGraph& scg, const NodeFilter& keep = {});

inline bool isCodeEntity(const SemanticNode& n) { return n.kind != NodeKind::File; }

}  // namespace scg
