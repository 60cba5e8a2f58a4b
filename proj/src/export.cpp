#include "scg/export.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "scg/error.hpp"
#include "scg/storage.hpp"

namespace fs = std::filesystem;

namespace scg {

namespace {

std::string quoted(std::string_view s, std::string_view escapeChars, char escape) {
    std::string out = "\"";
    for (char c : s) {
        if (escapeChars.find(c) != std::string_view::npos) out += escape;
        out += c;
    }
    out += '"';
    return out;
}

// GDF fields are CSV-like: quotes are doubled.
std::string gdf(std::string_view s) { return quoted(s, "\"", '"'); }

std::string dot(std::string_view s) { return quoted(s, "\"\\", '\\'); }

std::string xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

// GML strings cannot contain a double quote; it is written as an entity.
std::string gml(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "&quot;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    out += '"';
    return out;
}

std::string projectLabel(const SemanticCodeGraph& graph) {
    return graph.projectName().empty() ? std::string("scg") : graph.projectName();
}

std::ofstream openOutput(const fs::path& path) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

void closeOutput(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw DataError("cannot write " + path.string());
}

std::string algorithmField(const PartitionResult& r) {
    std::string alg = r.algorithm;
    for (auto& c : alg)
        if (c == '-') c = '_';
    return "npart_" + std::to_string(r.k) + "_" + alg;
}

}  // namespace

std::optional<GraphFormat> parseGraphFormat(std::string_view name) {
    if (name == "gdf") return GraphFormat::Gdf;
    if (name == "dot") return GraphFormat::Dot;
    if (name == "graphml") return GraphFormat::GraphMl;
    if (name == "gml") return GraphFormat::Gml;
    return std::nullopt;
}

std::string_view extension(GraphFormat format) {
    switch (format) {
        case GraphFormat::Gdf: return "gdf";
        case GraphFormat::Dot: return "dot";
        case GraphFormat::GraphMl: return "graphml";
        case GraphFormat::Gml: return "gml";
    }
    return "";
}

void writeGdf(std::ostream& out, const SemanticCodeGraph& graph) {
    out << "nodedef>name VARCHAR,label VARCHAR,kind VARCHAR,loc INTEGER,package VARCHAR,file VARCHAR\n";
    for (const auto& [id, n] : graph.nodes()) {
        out << gdf(id) << ',' << gdf(n.displayName) << ',' << gdf(to_string(n.kind)) << ','
            << n.loc << ',' << gdf(n.packageName) << ',' << gdf(n.fileUri) << '\n';
    }
    out << "edgedef>node1 VARCHAR,node2 VARCHAR,type VARCHAR,directed BOOLEAN\n";
    for (const auto& e : graph.edges())
        out << gdf(e.from) << ',' << gdf(e.to) << ',' << gdf(e.type) << ",true\n";
}

void writeDot(std::ostream& out, const SemanticCodeGraph& graph) {
    out << "digraph " << dot(projectLabel(graph)) << " {\n";
    for (const auto& [id, n] : graph.nodes()) {
        out << "  " << dot(id) << " [label=" << dot(n.displayName) << ", kind=" << dot(to_string(n.kind))
            << ", loc=" << n.loc << ", package=" << dot(n.packageName) << ", file=" << dot(n.fileUri) << "];\n";
    }
    for (const auto& e : graph.edges())
        out << "  " << dot(e.from) << " -> " << dot(e.to) << " [label=" << dot(e.type) << "];\n";
    out << "}\n";
}

void writeGraphMl(std::ostream& out, const SemanticCodeGraph& graph) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
           "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
           "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
           "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
           "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
           "  <key id=\"loc\" for=\"node\" attr.name=\"loc\" attr.type=\"int\"/>\n"
           "  <key id=\"package\" for=\"node\" attr.name=\"package\" attr.type=\"string\"/>\n"
           "  <key id=\"file\" for=\"node\" attr.name=\"file\" attr.type=\"string\"/>\n"
           "  <key id=\"type\" for=\"edge\" attr.name=\"type\" attr.type=\"string\"/>\n";
    out << "  <graph id=\"" << xml(projectLabel(graph)) << "\" edgedefault=\"directed\">\n";
    for (const auto& [id, n] : graph.nodes()) {
        out << "    <node id=\"" << xml(id) << "\">"
            << "<data key=\"label\">" << xml(n.displayName) << "</data>"
            << "<data key=\"kind\">" << to_string(n.kind) << "</data>"
            << "<data key=\"loc\">" << n.loc << "</data>"
            << "<data key=\"package\">" << xml(n.packageName) << "</data>"
            << "<data key=\"file\">" << xml(n.fileUri) << "</data></node>\n";
    }
    std::size_t i = 0;
    for (const auto& e : graph.edges()) {
        out << "    <edge id=\"e" << i++ << "\" source=\"" << xml(e.from) << "\" target=\"" << xml(e.to) << "\">"
            << "<data key=\"type\">" << xml(e.type) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void writeGml(std::ostream& out, const SemanticCodeGraph& graph, const std::vector<PartitionResult>& partitions) {
    std::map<std::string_view, std::size_t> index;
    for (const auto& [id, n] : graph.nodes()) index.emplace(id, index.size());

    std::vector<std::pair<std::string, std::map<std::string_view, int>>> fields;
    for (const auto& r : partitions) {
        std::map<std::string_view, int> byId;
        for (std::size_t i = 0; i < r.ids.size(); ++i) byId.emplace(r.ids[i], r.assignment[i]);
        fields.emplace_back(algorithmField(r), std::move(byId));
    }

    out << "graph [\n  directed 1\n  label " << gml(projectLabel(graph)) << "\n";
    for (const auto& [id, n] : graph.nodes()) {
        out << "  node [\n    id " << index.at(id) << "\n    label " << gml(id) << "\n    name " << gml(n.displayName)
            << "\n    kind " << gml(to_string(n.kind)) << "\n    loc " << n.loc << "\n    package "
            << gml(n.packageName) << "\n    file " << gml(n.fileUri) << "\n";
        for (const auto& [field, byId] : fields) {
            auto it = byId.find(id);
            out << "    " << field << ' ' << (it == byId.end() ? -1 : it->second) << "\n";
        }
        out << "  ]\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  edge [\n    source " << index.at(e.from) << "\n    target " << index.at(e.to) << "\n    type "
            << gml(e.type) << "\n  ]\n";
    }
    out << "]\n";
}

fs::path exportGraph(const SemanticCodeGraph& graph, GraphFormat format, const fs::path& outDir) {
    const auto path = outDir / (projectLabel(graph) + "." + std::string(extension(format)));
    auto out = openOutput(path);
    switch (format) {
        case GraphFormat::Gdf: writeGdf(out, graph); break;
        case GraphFormat::Dot: writeDot(out, graph); break;
        case GraphFormat::GraphMl: writeGraphMl(out, graph); break;
        case GraphFormat::Gml: writeGml(out, graph); break;
    }
    closeOutput(out, path);
    return path;
}

std::string partitionCsvName(const std::string& project, const PartitionResult& result) {
    return project + "-npart-" + std::to_string(result.k) + "-" + result.algorithm + ".csv";
}

void writePartitionCsv(std::ostream& out, const PartitionResult& result) {
    out << "id,npart\n";
    for (std::size_t i = 0; i < result.ids.size(); ++i) {
        const auto& id = result.ids[i];
        // quote only when the id would break the row
        if (id.find_first_of(",\"\n") != std::string::npos)
            out << gdf(id);
        else
            out << id;
        out << ',' << result.assignment[i] << '\n';
    }
}

std::vector<fs::path> exportPartitionCsv(const std::string& project, const std::vector<PartitionResult>& results,
                                         const fs::path& outDir) {
    std::vector<fs::path> written;
    for (const auto& r : results) {
        auto path = outDir / partitionCsvName(project, r);
        auto out = openOutput(path);
        writePartitionCsv(out, r);
        closeOutput(out, path);
        written.push_back(path);
    }
    return written;
}

namespace {

nlohmann::ordered_json codeCell(const std::string& source) {
    nlohmann::ordered_json lines = nlohmann::ordered_json::array();
    std::istringstream in(source);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(in, line)) all.push_back(line);
    for (std::size_t i = 0; i < all.size(); ++i) lines.push_back(all[i] + (i + 1 < all.size() ? "\n" : ""));
    return {{"cell_type", "code"},
            {"execution_count", nullptr},
            {"metadata", nlohmann::ordered_json::object()},
            {"outputs", nlohmann::ordered_json::array()},
            {"source", lines}};
}

nlohmann::ordered_json markdownCell(const std::string& text) {
    return {{"cell_type", "markdown"},
            {"metadata", nlohmann::ordered_json::object()},
            {"source", nlohmann::ordered_json::array({text})}};
}

std::string starterNotebook(const std::string& project, const std::string& csvName) {
    nlohmann::ordered_json nb;
    nb["cells"] = nlohmann::ordered_json::array({
        markdownCell("# " + project + " semantic code graph"),
        codeCell("import pandas as pd\n"
                 "import scg\n"
                 "\n"
                 "scg_files = scg.read_scg(\"" + project + "\")\n"
                 "G = scg.create_graph(scg_files)\n"
                 "scg_df = pd.merge(\n"
                 "    scg.create_nodes_df(scg_files),\n"
                 "    pd.read_csv(\"" + csvName + "\"),\n"
                 "    on=\"id\",\n"
                 ")\n"
                 "scg_df.head()"),
        markdownCell("Methods placed in a different partition than the type declaring them."),
        codeCell("def find_parent_and_parent_npart(m):\n"
                 "    parent = next(\n"
                 "        p\n"
                 "        for p, _, data in G.in_edges(m[\"id\"], data=True)\n"
                 "        if data[\"type\"] == \"DECLARATION\"\n"
                 "    )\n"
                 "    p = scg_df.query(\"id == @parent\")\n"
                 "    return pd.concat([p[\"id\"], p[\"npart\"]], ignore_index=True)\n"
                 "\n"
                 "m_df = scg_df.query('kind == \"METHOD\"').copy()\n"
                 "if len(m_df):\n"
                 "    m_df[[\"parent\", \"parent_npart\"]] = m_df.apply(find_parent_and_parent_npart, axis=1)\n"
                 "    outstanding = m_df[m_df[\"npart\"] != m_df[\"parent_npart\"]].groupby(\"parent\").size()\n"
                 "else:\n"
                 "    outstanding = pd.Series(dtype=int)\n"
                 "outstanding"),
    });
    nb["metadata"] = {{"kernelspec", {{"display_name", "Python 3"}, {"language", "python"}, {"name", "python3"}}},
                      {"language_info", {{"name", "python"}}}};
    nb["nbformat"] = 4;
    nb["nbformat_minor"] = 5;
    return nb.dump(1) + "\n";
}

void writeText(const fs::path& path, std::string_view text) {
    auto out = openOutput(path);
    out << text;
    closeOutput(out, path);
}

}  // namespace

fs::path exportJupyterBundle(const SemanticCodeGraph& graph, const fs::path& workspaceRoot, const fs::path& outDir,
                             const BundleOptions& options) {
    const auto metadata = workspaceRoot / kMetadataDir;
    std::error_code ec;
    if (!fs::is_directory(metadata, ec))
        throw DataError("no SCG data in " + workspaceRoot.string() + "; run `scg-cli generate -l java " +
                        workspaceRoot.string() + "` first");
    const auto project = projectLabel(graph);
    const auto bundle = outDir / (project + "-jupyter");
    fs::remove_all(bundle, ec);
    if (ec) throw DataError("cannot replace " + bundle.string() + ": " + ec.message());

    const auto dataDir = bundle / project / kMetadataDir;
    fs::create_directories(dataDir, ec);
    if (ec) throw DataError("cannot create " + dataDir.string() + ": " + ec.message());
    for (const auto& file : listRecordFiles(metadata)) {
        auto target = dataDir / fs::relative(file, metadata);
        fs::create_directories(target.parent_path(), ec);
        fs::copy_file(file, target, fs::copy_options::overwrite_existing, ec);
        if (ec) throw DataError("cannot copy " + file.string() + ": " + ec.message());
    }

    writeText(bundle / "scg" / "__init__.py", notebookHelperSource());

    std::string csvName;
    const auto entities = std::count_if(graph.nodes().begin(), graph.nodes().end(),
                                        [](const auto& kv) { return kv.second.kind != NodeKind::File; });
    const int k = std::min<int>(options.partitions, static_cast<int>(entities));
    PartitionResult sample;
    if (k >= 2) {
        sample = partition(graph, k, kAlgorithmFm, options.partition);
    } else {
        // too small to split: every entity in partition 0
        sample.algorithm = std::string(kAlgorithmFm);
        sample.k = std::max(k, 1);
        for (const auto& [id, n] : graph.nodes())
            if (n.kind != NodeKind::File) sample.ids.push_back(id);
        sample.assignment.assign(sample.ids.size(), 0);
    }
    csvName = partitionCsvName(project, sample);
    {
        auto path = bundle / csvName;
        auto out = openOutput(path);
        writePartitionCsv(out, sample);
        closeOutput(out, path);
    }

    writeText(bundle / "analysis.ipynb", starterNotebook(project, csvName));
    writeText(bundle / "README.md",
              "# " + project + " notebook bundle\n\n"
              "- `" + project + "/.semanticgraphs/`: SCG data of the project\n"
              "- `scg/`: helper package (`read_scg`, `create_graph`, `create_nodes_df`)\n"
              "- `" + csvName + "`: sample partitioning (`id,npart`)\n"
              "- `analysis.ipynb`: starter notebook\n\n"
              "Launch from this directory (needs pandas and networkx):\n\n"
              "    jupyter notebook analysis.ipynb\n");
    return bundle;
}

}  // namespace scg
