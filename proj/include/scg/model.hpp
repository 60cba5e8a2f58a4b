#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace scg {

enum class NodeKind {
    File,
    Class,
    Interface,
    Enum,
    Method,
    Constructor,
    Field,
    Parameter,
    LocalVariable,
    TypeParameter,
};

inline constexpr NodeKind kAllNodeKinds[] = {
    NodeKind::File,      NodeKind::Class,       NodeKind::Interface,     NodeKind::Enum,
    NodeKind::Method,    NodeKind::Constructor, NodeKind::Field,         NodeKind::Parameter,
    NodeKind::LocalVariable, NodeKind::TypeParameter,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);

/// The six edge kinds produced by the extractor. Edges store their type as a
/// string so that kinds written by other producers survive a load/save cycle.
enum class EdgeKind { Declaration, Call, Reference, Extend, Override, Type };

inline constexpr EdgeKind kAllEdgeKinds[] = {
    EdgeKind::Declaration, EdgeKind::Call,     EdgeKind::Reference,
    EdgeKind::Extend,      EdgeKind::Override, EdgeKind::Type,
};

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view name);

/// 0-based lines and columns, end column exclusive.
struct Location {
    int startLine = 0;
    int startCol = 0;
    int endLine = 0;
    int endCol = 0;

    auto operator<=>(const Location&) const = default;
    bool valid() const noexcept {
        return startLine >= 0 && startCol >= 0 && startLine <= endLine &&
               (startLine != endLine || startCol <= endCol);
    }
    int lineSpan() const noexcept { return endLine - startLine + 1; }
};

struct SemanticNode {
    std::string id;
    NodeKind kind = NodeKind::Class;
    std::string displayName;
    std::string packageName;
    std::string fileUri;
    std::optional<Location> location;
    int loc = 0;
    std::map<std::string, std::string> properties;

    bool operator==(const SemanticNode&) const = default;

    /// External symbol placeholder: no location and no defining file.
    bool isStub() const noexcept { return !location && fileUri.empty(); }
};

struct SemanticEdge {
    std::string from;
    std::string to;
    std::string type;
    std::optional<Location> location;

    /// Edges are identified by (from, to, type); the use-site location is payload.
    auto key() const { return std::tie(from, to, type); }
    bool operator==(const SemanticEdge&) const = default;
};

inline bool edgeKeyLess(const SemanticEdge& a, const SemanticEdge& b) { return a.key() < b.key(); }

/// Stub for a symbol outside the project. Kind is inferred from the id shape:
/// `x.m().` is a METHOD, `x.f.` a FIELD, anything else a CLASS.
SemanticNode makeStubNode(std::string_view id);

using NodeMap = std::map<std::string, SemanticNode, std::less<>>;

/// Whole-project Semantic Code Graph. Nodes are kept ordered by id and edges
/// are unique on (from, to, type); insertion order of edges is preserved.
class SemanticCodeGraph {
public:
    SemanticCodeGraph() = default;
    explicit SemanticCodeGraph(std::string projectName) : projectName_(std::move(projectName)) {}

    const std::string& projectName() const noexcept { return projectName_; }
    void setProjectName(std::string name) { projectName_ = std::move(name); }

    const NodeMap& nodes() const noexcept { return nodes_; }
    const std::vector<SemanticEdge>& edges() const noexcept { return edges_; }
    std::size_t nodeCount() const noexcept { return nodes_.size(); }
    std::size_t edgeCount() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return nodes_.empty() && edges_.empty(); }

    const SemanticNode* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    /// Inserts the node. An existing node with the same id is replaced only when
    /// the existing one is a stub and the new one is not. Returns true when the
    /// stored node changed.
    bool addNode(SemanticNode node);

    /// Adds a stub for `id` unless a node with that id already exists.
    void ensureNode(std::string_view id);

    /// Inserts the edge unless its (from, to, type) key exists already; missing
    /// endpoints are materialized as stubs. Returns true when inserted.
    bool addEdge(SemanticEdge edge);

    /// Throws GraphError naming the first violated invariant.
    void validate() const;

    /// Canonical, order-independent text dump (sorted nodes and edges), used for
    /// equality checks between graphs.
    std::string canonicalDump() const;

private:
    std::string projectName_;
    NodeMap nodes_;
    std::vector<SemanticEdge> edges_;
    std::set<std::tuple<std::string, std::string, std::string>> edgeKeys_;
};

/// Node/edge set equality; ignores project name and edge insertion order.
bool sameContent(const SemanticCodeGraph& a, const SemanticCodeGraph& b);

}  // namespace scg
