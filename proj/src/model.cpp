#include "scg/model.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>

#include "scg/error.hpp"

namespace scg {

namespace {

constexpr std::array<std::string_view, 10> kNodeKindNames = {
    "FILE",   "CLASS", "INTERFACE", "ENUM",           "METHOD",
    "CONSTRUCTOR", "FIELD", "PARAMETER", "LOCAL_VARIABLE", "TYPE_PARAMETER",
};

constexpr std::array<std::string_view, 6> kEdgeKindNames = {
    "DECLARATION", "CALL", "REFERENCE", "EXTEND", "OVERRIDE", "TYPE",
};

void dumpLocation(std::ostream& out, const std::optional<Location>& l) {
    if (!l) {
        out << '-';
        return;
    }
    out << l->startLine << ':' << l->startCol << '-' << l->endLine << ':' << l->endCol;
}

}  // namespace

std::string_view to_string(NodeKind kind) { return kNodeKindNames[static_cast<std::size_t>(kind)]; }

std::optional<NodeKind> parse_node_kind(std::string_view name) {
    for (std::size_t i = 0; i < kNodeKindNames.size(); ++i)
        if (kNodeKindNames[i] == name) return static_cast<NodeKind>(i);
    return std::nullopt;
}

std::string_view to_string(EdgeKind kind) { return kEdgeKindNames[static_cast<std::size_t>(kind)]; }

std::optional<EdgeKind> parse_edge_kind(std::string_view name) {
    for (std::size_t i = 0; i < kEdgeKindNames.size(); ++i)
        if (kEdgeKindNames[i] == name) return static_cast<EdgeKind>(i);
    return std::nullopt;
}

SemanticNode makeStubNode(std::string_view id) {
    SemanticNode node;
    node.id = std::string(id);
    std::string_view body = id;
    if (body.ends_with(").")) {
        node.kind = NodeKind::Method;
        body.remove_suffix(1);
        auto paren = body.rfind('(');
        auto dot = body.substr(0, paren).rfind('.');
        node.displayName = std::string(body.substr(dot == std::string_view::npos ? 0 : dot + 1));
        node.packageName.clear();
        return node;
    }
    if (body.ends_with('.')) {
        node.kind = NodeKind::Field;
        body.remove_suffix(1);
    }
    auto dot = body.rfind('.');
    node.displayName = std::string(body.substr(dot == std::string_view::npos ? 0 : dot + 1));
    if (node.kind == NodeKind::Class && dot != std::string_view::npos) {
        // Package = leading lower-case segments, e.g. java.util.Map.Entry -> java.util
        std::string pkg;
        std::size_t start = 0;
        while (start < body.size()) {
            auto next = body.find('.', start);
            if (next == std::string_view::npos) break;
            auto segment = body.substr(start, next - start);
            if (segment.empty() || !(segment[0] >= 'a' && segment[0] <= 'z')) break;
            if (!pkg.empty()) pkg += '.';
            pkg += segment;
            start = next + 1;
        }
        node.packageName = std::move(pkg);
    }
    return node;
}

const SemanticNode* SemanticCodeGraph::find(std::string_view id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

bool SemanticCodeGraph::addNode(SemanticNode node) {
    auto it = nodes_.find(node.id);
    if (it == nodes_.end()) {
        auto key = node.id;
        nodes_.emplace(std::move(key), std::move(node));
        return true;
    }
    if (it->second.isStub() && !node.isStub()) {
        it->second = std::move(node);
        return true;
    }
    return false;
}

void SemanticCodeGraph::ensureNode(std::string_view id) {
    if (nodes_.find(id) == nodes_.end()) addNode(makeStubNode(id));
}

bool SemanticCodeGraph::addEdge(SemanticEdge edge) {
    auto [it, inserted] = edgeKeys_.emplace(edge.from, edge.to, edge.type);
    if (!inserted) return false;
    ensureNode(edge.from);
    ensureNode(edge.to);
    edges_.push_back(std::move(edge));
    return true;
}

void SemanticCodeGraph::validate() const {
    for (const auto& [id, node] : nodes_) {
        if (id != node.id) throw GraphError("node key/id mismatch: " + id);
        if (node.location) {
            if (!node.location->valid()) throw GraphError("invalid location on " + id);
            if (node.loc != node.location->lineSpan())
                throw GraphError("loc does not match line span on " + id);
        } else if (node.loc != 0) {
            throw GraphError("location-less node with non-zero loc: " + id);
        }
        if ((node.kind == NodeKind::File) != (node.id == node.fileUri))
            throw GraphError("FILE kind must coincide with id == fileUri: " + id);
    }
    const auto declaration = std::string(to_string(EdgeKind::Declaration));
    std::unordered_map<std::string, int> declParents;
    for (const auto& e : edges_) {
        const auto* from = find(e.from);
        const auto* to = find(e.to);
        if (!from || !to) throw GraphError("dangling edge " + e.from + " -> " + e.to);
        if (e.type != declaration) continue;
        if (e.from == e.to) throw GraphError("self declaration on " + e.from);
        if (to->location && to->kind != NodeKind::File) {
            if (from->fileUri != to->fileUri)
                throw GraphError("declaration crosses files: " + e.from + " -> " + e.to);
            ++declParents[e.to];
        }
    }
    for (const auto& [id, node] : nodes_) {
        if (node.kind == NodeKind::File || !node.location) continue;
        auto it = declParents.find(id);
        if (it == declParents.end() || it->second != 1)
            throw GraphError("node must have exactly one DECLARATION parent: " + id);
    }
}

std::string SemanticCodeGraph::canonicalDump() const {
    std::ostringstream out;
    for (const auto& [id, n] : nodes_) {
        out << "N " << id << '|' << to_string(n.kind) << '|' << n.displayName << '|' << n.packageName
            << '|' << n.fileUri << '|' << n.loc << '|';
        dumpLocation(out, n.location);
        for (const auto& [k, v] : n.properties) out << '|' << k << '=' << v;
        out << '\n';
    }
    std::vector<const SemanticEdge*> sorted;
    sorted.reserve(edges_.size());
    for (const auto& e : edges_) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](const SemanticEdge* a, const SemanticEdge* b) { return edgeKeyLess(*a, *b); });
    for (const auto* e : sorted) {
        out << "E " << e->from << '|' << e->to << '|' << e->type << '|';
        dumpLocation(out, e->location);
        out << '\n';
    }
    return out.str();
}

bool sameContent(const SemanticCodeGraph& a, const SemanticCodeGraph& b) {
    return a.canonicalDump() == b.canonicalDump();
}

}  // namespace scg
