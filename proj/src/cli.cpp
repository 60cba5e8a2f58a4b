#include "scg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scg/crucial.hpp"
#include "scg/error.hpp"
#include "scg/export.hpp"
#include "scg/extractor.hpp"
#include "scg/partition.hpp"
#include "scg/report.hpp"
#include "scg/storage.hpp"
#include "scg/summary.hpp"

namespace fs = std::filesystem;

namespace scg {

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"help", "Display help information about the specified command."},
    {"crucial", "Find crucial code entities."},
    {"generate", "Generate SCG metadata."},
    {"partition", "Suggest project partitioning."},
    {"summary", "Summarize the project."},
    {"export", "Export SCG metadata to various output formats."},
};

const std::map<std::string, std::string> kCommandUsage = {
    {"help",
     "Usage: scg-cli help [COMMAND]\n"
     "Display help information about the specified command.\n"
     "      [COMMAND]           The command to describe.\n"},
    {"crucial",
     "Usage: scg-cli crucial [-n=<N>] [-o=<format>] [--alpha=<a>] [--damping=<d>]\n"
     "                       [--out-dir=<dir>] <workspace>\n"
     "Find crucial code entities.\n"
     "      <workspace>         Project root containing .semanticgraphs.\n"
     "  -n, --top=<N>           Entities listed per metric (default 10).\n"
     "  -o, --output=<format>   txt, html, tex, csv or json (default txt).\n"
     "      --alpha=<a>         Katz attenuation factor (default 0.1).\n"
     "      --damping=<d>       PageRank damping factor (default 0.85).\n"
     "      --out-dir=<dir>     Directory for file outputs (default ./scg-output).\n"},
    {"generate",
     "Usage: scg-cli generate -l=<language> [--json] <workspace>\n"
     "Generate SCG metadata.\n"
     "      <workspace>         Project root; data is written to <workspace>/.semanticgraphs.\n"
     "  -l, --language=<language>\n"
     "                          Source language (supported: java).\n"
     "      --json              Write JSON records instead of the binary encoding.\n"},
    {"partition",
     "Usage: scg-cli partition [-o=<format>] [--seed=<s>] [--epsilon=<e>]\n"
     "                         [--out-dir=<dir>] <workspace> <n>\n"
     "Suggest project partitioning.\n"
     "      <workspace>         Project root containing .semanticgraphs.\n"
     "      <n>                 Largest number of partitions; k = 2..n are computed.\n"
     "  -o, --output=<format>   txt, html, tex, csv, json or gml (default txt).\n"
     "      --seed=<s>          Random seed (default $SCG_CLI_SEED or 0).\n"
     "      --epsilon=<e>       Allowed imbalance (default 0.30).\n"
     "      --out-dir=<dir>     Directory for file outputs (default ./scg-output).\n"},
    {"summary",
     "Usage: scg-cli summary [-o=<format>] [--out-dir=<dir>] <workspace>\n"
     "Summarize the project.\n"
     "      <workspace>         Project root containing .semanticgraphs.\n"
     "  -o, --output=<format>   txt, html, tex, csv or json (default txt).\n"
     "      --out-dir=<dir>     Directory for file outputs (default ./scg-output).\n"},
    {"export",
     "Usage: scg-cli export -o=<format> [--seed=<s>] [--epsilon=<e>]\n"
     "                      [--out-dir=<dir>] <workspace>\n"
     "Export SCG metadata to various output formats.\n"
     "      <workspace>         Project root containing .semanticgraphs.\n"
     "  -o, --output=<format>   gdf, dot, graphml, gml or jupyter.\n"
     "      --seed=<s>          Seed of the bundle's sample partitioning (jupyter).\n"
     "      --epsilon=<e>       Imbalance of the bundle's sample partitioning (jupyter).\n"
     "      --out-dir=<dir>     Output directory (default ./scg-output).\n"},
};

struct Options {
    std::string workspace;
    std::string output;
    std::string language;
    std::string outDir = "scg-output";
    std::size_t top = 10;
    int maxK = 0;
    std::optional<std::uint64_t> seed;
    double alpha = 0.1;
    double damping = 0.85;
    double epsilon = 0.30;
    bool json = false;
};

std::uint64_t resolveSeed(const Options& o) {
    if (o.seed) return *o.seed;
    const char* env = std::getenv("SCG_CLI_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        auto value = std::stoull(env, &used);
        if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SCG_CLI_SEED is not a non-negative integer: '") + env + "'");
}

SemanticCodeGraph load(const Options& o) {
    if (o.workspace.empty()) throw UsageError("missing <workspace>");
    return loadGraph(o.workspace);
}

fs::path writeFile(const fs::path& dir, const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
    auto path = dir / name;
    std::ofstream file(path, std::ios::binary);
    file << content;
    if (!file) throw DataError("cannot write " + path.string());
    return path;
}

// txt goes to stdout; every other format becomes a file under --out-dir.
void emit(std::ostream& out, const Options& o, ReportFormat fmt, const std::string& stem, const std::string& text) {
    if (fmt == ReportFormat::Txt) {
        out << text;
        return;
    }
    out << "wrote " << writeFile(o.outDir, stem + "." + std::string(extension(fmt)), text).string() << "\n";
}

ReportFormat reportFormat(const std::string& name, std::initializer_list<std::string_view> allowed) {
    if (name.empty()) return ReportFormat::Txt;
    auto fmt = parseReportFormat(name);
    if (!fmt || std::find(allowed.begin(), allowed.end(), name) == allowed.end())
        throw UsageError("unsupported output format '" + name + "'");
    return *fmt;
}

int runGenerate(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.workspace.empty()) throw UsageError("missing <workspace>");
    if (o.language != "java")
        throw UsageError("unsupported language '" + o.language + "'; supported languages: java");
    if (!fs::is_directory(o.workspace)) throw DataError("workspace is not a directory: " + o.workspace);
    auto result = extractProject(o.workspace);
    auto files = saveGraph(result.graph, o.workspace, o.json ? Encoding::Json : Encoding::Binary);
    const auto& r = result.report;
    for (const auto& f : r.failures) err << "warning: skipped " << f << "\n";
    out << "Generated SCG metadata for " << result.graph.projectName() << ": " << result.graph.nodeCount()
        << " nodes, " << result.graph.edgeCount() << " edges from " << r.filesParsed << " files";
    if (r.filesFailed) out << " (" << r.filesFailed << " skipped)";
    out << "; " << files.size() << " record files in " << (fs::path(o.workspace) / ".semanticgraphs").string()
        << "\n";
    return kExitOk;
}

int runSummary(const Options& o, std::ostream& out) {
    auto fmt = reportFormat(o.output, {"txt", "html", "tex", "csv", "json"});
    auto graph = load(o);
    emit(out, o, fmt, graph.projectName() + "-summary", renderSummary(summarize(graph), fmt));
    return kExitOk;
}

int runCrucial(const Options& o, std::ostream& out, std::ostream& err) {
    auto fmt = reportFormat(o.output, {"txt", "html", "tex", "csv", "json"});
    if (o.top == 0) throw UsageError("-n must be at least 1");
    if (!(o.damping > 0 && o.damping < 1)) throw UsageError("--damping must lie in (0, 1)");
    if (!(o.alpha > 0)) throw UsageError("--alpha must be positive");
    auto graph = load(o);
    CrucialOptions opts;
    opts.n = o.top;
    opts.damping = o.damping;
    opts.katzAlpha = o.alpha;
    auto report = crucial(graph, opts);
    if (fmt != ReportFormat::Txt)
        for (const auto& w : report.warnings) err << "warning: " << w << "\n";
    emit(out, o, fmt, graph.projectName() + "-crucial", renderCrucial(report, fmt));
    return kExitOk;
}

PartitionOptions partitionOptions(const Options& o) {
    if (!(o.epsilon >= 0)) throw UsageError("--epsilon must be non-negative");
    PartitionOptions opts;
    opts.epsilon = o.epsilon;
    opts.seed = resolveSeed(o);
    return opts;
}

int runPartition(const Options& o, std::ostream& out) {
    static const std::vector<std::string> formats = {"txt", "html", "tex", "csv", "json", "gml"};
    const std::string name = o.output.empty() ? "txt" : o.output;
    if (std::find(formats.begin(), formats.end(), name) == formats.end())
        throw UsageError("unsupported output format '" + name + "'");
    if (o.maxK < 2) throw UsageError("missing or invalid <n>; expected an integer of at least 2");
    auto opts = partitionOptions(o);
    auto graph = load(o);
    auto results = partitionSweep(graph, o.maxK, opts);
    const auto& project = graph.projectName();
    if (name == "csv") {
        for (const auto& p : exportPartitionCsv(project, results, o.outDir)) out << "wrote " << p.string() << "\n";
    } else if (name == "gml") {
        std::ostringstream gml;
        writeGml(gml, graph, results);
        out << "wrote " << writeFile(o.outDir, project + "-partition.gml", gml.str()).string() << "\n";
    } else {
        auto fmt = *parseReportFormat(name);
        emit(out, o, fmt, project + "-partition", renderPartitions(project, results, fmt, &graph));
    }
    return kExitOk;
}

int runExport(const Options& o, std::ostream& out) {
    if (o.output.empty()) throw UsageError("missing -o <format>; expected gdf, dot, graphml, gml or jupyter");
    std::optional<GraphFormat> graphFormat;
    if (o.output != "jupyter") {
        graphFormat = parseGraphFormat(o.output);
        if (!graphFormat) throw UsageError("unsupported output format '" + o.output + "'");
    }
    auto opts = partitionOptions(o);
    auto graph = load(o);
    fs::path written;
    if (graphFormat) {
        written = exportGraph(graph, *graphFormat, o.outDir);
    } else {
        BundleOptions bundle;
        bundle.partition = opts;
        written = exportJupyterBundle(graph, o.workspace, o.outDir, bundle);
    }
    out << "wrote " << written.string() << "\n";
    return kExitOk;
}

bool wantsHelp(const std::vector<std::string>& args) {
    return std::any_of(args.begin(), args.end(), [](const std::string& a) { return a == "-h" || a == "--help"; });
}

}  // namespace

std::string mainHelp() {
    std::string text = "Usage: scg-cli [COMMAND]\nCLI to analyze projects based on SCG data\nCommands:\n";
    for (const auto& [name, description] : kCommands) {
        std::string line = "  " + name;
        line.resize(13, ' ');
        text += line + description + "\n";
    }
    return text;
}

std::string commandHelp(const std::string& command) {
    auto it = kCommandUsage.find(command);
    return it == kCommandUsage.end() ? std::string() : it->second;
}

int runCli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    // Options may precede the command ("scg-cli -o tex partition ws 10").
    auto args = argv;
    if (!args.empty() && args.front().size() > 1 && args.front()[0] == '-' && args.front() != "-h" &&
        args.front() != "--help") {
        auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) { return !commandHelp(a).empty(); });
        if (it != args.end()) std::rotate(args.begin(), it, it + 1);
    }
    if (args.empty()) {
        err << mainHelp();
        return kExitUsage;
    }
    const std::string& command = args.front();
    if (command == "-h" || command == "--help") {
        out << mainHelp();
        return kExitOk;
    }
    if (command == "help") {
        if (args.size() == 1) {
            out << mainHelp();
            return kExitOk;
        }
        auto text = commandHelp(args[1]);
        if (text.empty() || args.size() > 2) {
            err << "Unknown command: " << args[1] << "\n" << mainHelp();
            return kExitUsage;
        }
        out << text;
        return kExitOk;
    }
    if (commandHelp(command).empty()) {
        err << "Unknown command: " << command << "\n" << mainHelp();
        return kExitUsage;
    }
    std::vector<std::string> rest(args.begin() + 1, args.end());
    if (wantsHelp(rest)) {
        out << commandHelp(command);
        return kExitOk;
    }

    Options o;
    CLI::App app{"", "scg-cli " + command};
    app.set_help_flag();
    app.add_option("workspace", o.workspace);
    if (command == "generate") {
        app.add_option("-l,--language", o.language)->required();
        app.add_flag("--json", o.json);
    } else {
        app.add_option("-o,--output", o.output);
        app.add_option("--out-dir", o.outDir);
    }
    if (command == "crucial") {
        app.add_option("-n,--top", o.top);
        app.add_option("--alpha", o.alpha);
        app.add_option("--damping", o.damping);
    }
    if (command == "partition") app.add_option("n", o.maxK);
    if (command == "partition" || command == "export") {
        app.add_option("--seed", o.seed);
        app.add_option("--epsilon", o.epsilon);
    }

    try {
        std::vector<std::string> reversed(rest.rbegin(), rest.rend());
        app.parse(reversed);
        int code = kExitOk;
        if (command == "generate") code = runGenerate(o, out, err);
        else if (command == "summary") code = runSummary(o, out);
        else if (command == "crucial") code = runCrucial(o, out, err);
        else if (command == "partition") code = runPartition(o, out);
        else code = runExport(o, out);
        return code;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << commandHelp(command);
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        if (o.workspace.empty()) err << commandHelp(command);
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace scg
