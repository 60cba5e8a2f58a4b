#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scg/model.hpp"

namespace scg {

inline constexpr std::string_view kMetadataDir = ".semanticgraphs";
inline constexpr std::string_view kBinaryExtension = ".semanticgraphdb";
inline constexpr std::string_view kJsonExtension = ".json";

enum class Encoding { Binary, Json };

/// Contents of one per-source-file metadata file.
struct FileRecord {
    std::string projectName;
    std::string fileUri;
    std::vector<SemanticNode> nodes;
    std::vector<SemanticEdge> edges;
};

std::string encodeBinary(const FileRecord& record);
/// `name` is only used in error messages.
FileRecord decodeBinary(std::string_view bytes, const std::string& name);

std::string encodeJson(const FileRecord& record);
FileRecord decodeJson(std::string_view text, const std::string& name);

/// Groups the graph into one record per source file (sorted by fileUri), with
/// nodes and edges in canonical order. Throws GraphError for nodes that cannot
/// be attributed to a file.
std::vector<FileRecord> splitByFile(const SemanticCodeGraph& graph);

/// Writes `<root>/.semanticgraphs/<fileUri>.semanticgraphdb[.json]` for every
/// source file and removes record files left over from earlier saves. Returns
/// the written paths in sorted order.
std::vector<std::filesystem::path> saveGraph(const SemanticCodeGraph& graph,
                                             const std::filesystem::path& workspaceRoot,
                                             Encoding encoding = Encoding::Binary);

/// Reads and merges every record file under `<root>/.semanticgraphs`.
SemanticCodeGraph loadGraph(const std::filesystem::path& workspaceRoot);

/// Record files under the metadata directory, sorted; empty when it is missing.
std::vector<std::filesystem::path> listRecordFiles(const std::filesystem::path& metadataDir);

}  // namespace scg
