#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "scg/model.hpp"
#include "scg/partition.hpp"

namespace scg {

enum class GraphFormat { Gdf, Dot, GraphMl, Gml };

std::optional<GraphFormat> parseGraphFormat(std::string_view name);
std::string_view extension(GraphFormat format);

void writeGdf(std::ostream& out, const SemanticCodeGraph& graph);
void writeDot(std::ostream& out, const SemanticCodeGraph& graph);
void writeGraphMl(std::ostream& out, const SemanticCodeGraph& graph);

/// GML with integer node ids; the SCG id is the label. Each partitioning adds
/// an integer `npart_<k>_<algorithm>` field to every node (-1 when unassigned).
void writeGml(std::ostream& out, const SemanticCodeGraph& graph, const std::vector<PartitionResult>& partitions = {});

/// Writes `<outDir>/<project>.<ext>` and returns its path.
std::filesystem::path exportGraph(const SemanticCodeGraph& graph, GraphFormat format,
                                  const std::filesystem::path& outDir);

/// `<project>-npart-<k>-<algorithm>.csv` with an `id,npart` header.
std::string partitionCsvName(const std::string& project, const PartitionResult& result);
void writePartitionCsv(std::ostream& out, const PartitionResult& result);

/// Writes one partition CSV per result into outDir; returns the paths.
std::vector<std::filesystem::path> exportPartitionCsv(const std::string& project,
                                                      const std::vector<PartitionResult>& results,
                                                      const std::filesystem::path& outDir);

/// Source of the `scg` Python helper package shipped in notebook bundles.
std::string_view notebookHelperSource();

struct BundleOptions {
    int partitions = 6;  // the sample partitioning consumed by the starter notebook
    PartitionOptions partition;
};

/// Writes `<outDir>/<project>-jupyter/` holding a copy of the workspace's
/// `.semanticgraphs` data, the helper package, a starter notebook, a sample
/// partition CSV and a README. Any previous bundle at that path is replaced.
std::filesystem::path exportJupyterBundle(const SemanticCodeGraph& graph, const std::filesystem::path& workspaceRoot,
                                          const std::filesystem::path& outDir, const BundleOptions& options = {});

}  // namespace scg
