#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scg/model.hpp"

namespace scg {

struct ExtractionReport {
    int filesParsed = 0;
    int filesFailed = 0;
    int unresolvedReferences = 0;
    long long elapsedMs = 0;
    std::vector<std::string> failures;  // "<file>: <line>:<col>: <message>"
    std::vector<std::string> warnings;
};

struct ExtractionResult {
    SemanticCodeGraph graph;
    ExtractionReport report;
};

/// A Java source file held in memory; `uri` is its workspace-relative path.
struct SourceFile {
    std::string uri;
    std::string text;
};

/// Builds the graph for a set of in-memory sources. Files that fail to parse
/// are reported and contribute nothing.
ExtractionResult extractSources(std::vector<SourceFile> files, const std::string& projectName);

/// Collects every `.java` file under `workspaceRoot` (skipping `target`,
/// `build`, `.git` and `.semanticgraphs` directories) and extracts them.
ExtractionResult extractProject(const std::filesystem::path& workspaceRoot);

/// The `.java` files that extractProject would visit, as sorted relative paths.
std::vector<std::string> collectJavaFiles(const std::filesystem::path& workspaceRoot);

}  // namespace scg
