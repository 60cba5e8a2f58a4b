#include "scg/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace scg {

namespace {

using Json = nlohmann::ordered_json;

std::string formatGeneral(double value) {
    if (std::isinf(value)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string html(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tex(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\textbackslash{}"; break;
            case '~': out += "\\textasciitilde{}"; break;
            case '^': out += "\\textasciicircum{}"; break;
            case '&': case '%': case '$': case '#': case '_': case '{': case '}':
                out += '\\';
                out += c;
                break;
            default: out += c;
        }
    }
    return out;
}

std::string csv(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Non-finite numbers are not valid JSON; they are written as strings.
Json jsonNumber(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "n/a";
    return value;
}

const char* kHtmlHead =
    "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>%s</title>\n<style>\n"
    "body { font-family: sans-serif; margin: 2em; }\n"
    "table { border-collapse: collapse; margin-bottom: 1.5em; }\n"
    "td, th { border: 1px solid #ccc; padding: 0.25em 0.6em; text-align: left; }\n"
    "td.num { text-align: right; }\n"
    ".bar { background: #4a7bb7; height: 0.8em; }\n"
    "</style>\n</head>\n<body>\n";

std::string htmlHead(const std::string& title) {
    std::string head = kHtmlHead;
    auto pos = head.find("%s");
    head.replace(pos, 2, html(title));
    return head + "<h1>" + html(title) + "</h1>\n";
}

std::string assortativityText(const SummaryStats& s) {
    return s.degreeAssortativity ? formatFixed(*s.degreeAssortativity, 6) : "n/a";
}

std::vector<std::pair<std::string, std::string>> summaryRows(const SummaryStats& s) {
    return {
        {"Nodes", std::to_string(s.nodeCount)},
        {"Edges", std::to_string(s.edgeCount)},
        {"Total LOC", std::to_string(s.totalLoc)},
        {"Density", formatGeneral(s.density)},
        {"Average in-degree", formatFixed(s.avgInDegree, 4)},
        {"Average out-degree", formatFixed(s.avgOutDegree, 4)},
        {"Global clustering coefficient", formatFixed(s.globalClusteringCoefficient, 6)},
        {"Degree assortativity", assortativityText(s)},
    };
}

std::string distributionHtml(const std::string& title, const std::map<std::string, std::size_t>& counts) {
    std::size_t max = 1;
    for (const auto& [kind, c] : counts) max = std::max(max, c);
    std::ostringstream out;
    out << "<h2>" << html(title) << "</h2>\n<table>\n<tr><th>Kind</th><th>Count</th><th></th></tr>\n";
    for (const auto& [kind, c] : counts) {
        out << "<tr><td>" << html(kind) << "</td><td class=\"num\">" << c << "</td><td><div class=\"bar\" style=\"width: "
            << (200 * c / max) << "px\"></div></td></tr>\n";
    }
    out << "</table>\n";
    return out.str();
}

std::string scoreText(Metric metric, double score) {
    switch (metric) {
        case Metric::Loc:
        case Metric::OutDegree:
        case Metric::InDegree:
        case Metric::Combined:
            return formatFixed(score, 0);
        case Metric::Betweenness:
            return formatFixed(score, 1);
        default:
            return formatFixed(score, 6);
    }
}

std::string distributionText(const QualityScores& q) {
    std::string out = "[";
    for (std::size_t i = 0; i < q.distributionPercent.size(); ++i) {
        if (i) out += ",";
        out += formatFixed(q.distributionPercent[i], 0);
    }
    return out + "]";
}

std::vector<std::string> partitionCells(const PartitionResult& r) {
    const auto& q = r.quality;
    return {r.algorithm,
            std::to_string(r.k),
            formatFixed(q.modularityRatio, 2),
            formatFixed(q.avgClusteringCoefficient, 3),
            formatFixed(q.fileWeightedAccuracy, 1),
            formatFixed(q.fileAverageAccuracy, 1),
            formatFixed(q.packageWeightedAccuracy, 1),
            formatFixed(q.packageAverageAccuracy, 1),
            formatFixed(q.partitionVariance, 3),
            distributionText(q)};
}

struct Dominant {
    std::string unit;
    int partition = 0;
    std::size_t members = 0;
    std::size_t inDominant = 0;
};

// For each file or package: the partition holding most of its entities
// (lowest index on ties).
std::vector<Dominant> dominantPartitions(const SemanticCodeGraph& graph, const PartitionResult& r, bool byFile) {
    std::map<std::string, std::map<int, std::size_t>> counts;
    for (std::size_t i = 0; i < r.ids.size(); ++i) {
        const auto* node = graph.find(r.ids[i]);
        if (!node || node->isStub()) continue;
        ++counts[byFile ? node->fileUri : node->packageName][r.assignment[i]];
    }
    std::vector<Dominant> out;
    for (const auto& [unit, perPart] : counts) {
        Dominant d{unit.empty() ? "(default)" : unit, 0, 0, 0};
        for (const auto& [part, c] : perPart) {
            d.members += c;
            if (c > d.inDominant) {
                d.inDominant = c;
                d.partition = part;
            }
        }
        out.push_back(d);
    }
    return out;
}

std::string dominantHtml(const SemanticCodeGraph& graph, const PartitionResult& r) {
    std::ostringstream out;
    out << "<details>\n<summary>" << html(r.algorithm) << ", k = " << r.k << "</summary>\n";
    for (bool byFile : {false, true}) {
        out << "<table>\n<tr><th>" << (byFile ? "File" : "Package")
            << "</th><th>Dominant partition</th><th>Share</th></tr>\n";
        for (const auto& d : dominantPartitions(graph, r, byFile))
            out << "<tr><td>" << html(d.unit) << "</td><td class=\"num\">" << d.partition << "</td><td class=\"num\">"
                << formatFixed(100.0 * d.inDominant / d.members, 0) << "%</td></tr>\n";
        out << "</table>\n";
    }
    out << "</details>\n";
    return out.str();
}

const std::vector<std::string> kPartitionHeader = {"Algorithm", "k",     "Modularity", "ACC",      "F. W.",
                                                   "F. A.",     "P. W.", "P. A.",      "Variance", "Distribution"};

}  // namespace

std::string formatFixed(double value, int digits) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

std::optional<ReportFormat> parseReportFormat(std::string_view name) {
    if (name == "txt") return ReportFormat::Txt;
    if (name == "html") return ReportFormat::Html;
    if (name == "tex") return ReportFormat::Tex;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

std::string_view extension(ReportFormat format) {
    switch (format) {
        case ReportFormat::Txt: return "txt";
        case ReportFormat::Html: return "html";
        case ReportFormat::Tex: return "tex";
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Json: return "json";
    }
    return "";
}

std::string renderSummary(const SummaryStats& s, ReportFormat format) {
    std::ostringstream out;
    const auto rows = summaryRows(s);
    switch (format) {
        case ReportFormat::Txt: {
            out << "Project: " << s.projectName << "\n";
            for (const auto& [name, value] : rows) out << name << ": " << value << "\n";
            out << "Node kinds:\n";
            for (const auto& [kind, c] : s.nodeKindDistribution) out << "  " << kind << ": " << c << "\n";
            out << "Edge kinds:\n";
            for (const auto& [kind, c] : s.edgeKindDistribution) out << "  " << kind << ": " << c << "\n";
            break;
        }
        case ReportFormat::Html: {
            out << htmlHead("Project overview: " + s.projectName);
            out << "<table>\n<tr><th>Metric</th><th>Value</th></tr>\n";
            for (const auto& [name, value] : rows)
                out << "<tr><td>" << html(name) << "</td><td class=\"num\">" << html(value) << "</td></tr>\n";
            out << "</table>\n";
            out << distributionHtml("Node kinds", s.nodeKindDistribution);
            out << distributionHtml("Edge kinds", s.edgeKindDistribution);
            out << "<p>Clustering and assortativity use the undirected simplification; density uses the directed "
                   "simple graph.</p>\n</body>\n</html>\n";
            break;
        }
        case ReportFormat::Tex: {
            out << "\\begin{table}\n\\centering\n\\caption{Project overview: " << tex(s.projectName)
                << "}\n\\begin{tabular}{lr}\n\\hline\nMetric & Value \\\\\n\\hline\n";
            for (const auto& [name, value] : rows) out << tex(name) << " & " << tex(value) << " \\\\\n";
            out << "\\hline\n";
            for (const auto& [kind, c] : s.nodeKindDistribution) out << "Nodes " << tex(kind) << " & " << c << " \\\\\n";
            out << "\\hline\n";
            for (const auto& [kind, c] : s.edgeKindDistribution) out << "Edges " << tex(kind) << " & " << c << " \\\\\n";
            out << "\\hline\n\\end{tabular}\n\\end{table}\n";
            break;
        }
        case ReportFormat::Csv: {
            out << "metric,value\n";
            out << "projectName," << csv(s.projectName) << "\n";
            out << "nodeCount," << s.nodeCount << "\nedgeCount," << s.edgeCount << "\ntotalLoc," << s.totalLoc << "\n";
            out << "density," << formatGeneral(s.density) << "\n";
            out << "avgInDegree," << formatGeneral(s.avgInDegree) << "\n";
            out << "avgOutDegree," << formatGeneral(s.avgOutDegree) << "\n";
            out << "globalClusteringCoefficient," << formatGeneral(s.globalClusteringCoefficient) << "\n";
            out << "degreeAssortativity,"
                << (s.degreeAssortativity ? formatGeneral(*s.degreeAssortativity) : std::string("n/a")) << "\n";
            for (const auto& [kind, c] : s.nodeKindDistribution) out << "nodeKind:" << kind << "," << c << "\n";
            for (const auto& [kind, c] : s.edgeKindDistribution) out << "edgeKind:" << kind << "," << c << "\n";
            break;
        }
        case ReportFormat::Json: {
            Json j;
            j["projectName"] = s.projectName;
            j["nodeCount"] = s.nodeCount;
            j["edgeCount"] = s.edgeCount;
            j["totalLoc"] = s.totalLoc;
            j["nodeKindDistribution"] = s.nodeKindDistribution;
            j["edgeKindDistribution"] = s.edgeKindDistribution;
            j["density"] = s.density;
            j["avgInDegree"] = s.avgInDegree;
            j["avgOutDegree"] = s.avgOutDegree;
            j["globalClusteringCoefficient"] = s.globalClusteringCoefficient;
            j["degreeAssortativity"] = s.degreeAssortativity ? Json(*s.degreeAssortativity) : Json("n/a");
            out << j.dump(2) << "\n";
            break;
        }
    }
    return out.str();
}

std::string renderCrucial(const CrucialReport& report, ReportFormat format) {
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Txt: {
            out << "Crucial code entities of " << report.projectName << " (top " << report.n << ")\n";
            for (const auto& r : report.rankings) {
                out << "\n" << metricTitle(r.metric) << "\n";
                std::size_t rank = 1;
                for (const auto& e : r.entries)
                    out << "  " << rank++ << ". " << e.id << "  " << scoreText(r.metric, e.score) << "\n";
            }
            for (const auto& w : report.warnings) out << "\nwarning: " << w << "\n";
            break;
        }
        case ReportFormat::Html: {
            out << htmlHead("Crucial code entities: " + report.projectName);
            for (const auto& r : report.rankings) {
                out << "<h2>" << html(metricTitle(r.metric)) << "</h2>\n<table>\n<tr><th>#</th><th>Entity</th>"
                    << "<th>Score</th></tr>\n";
                std::size_t rank = 1;
                for (const auto& e : r.entries)
                    out << "<tr><td>" << rank++ << "</td><td>" << html(e.id) << "</td><td class=\"num\">"
                        << scoreText(r.metric, e.score) << "</td></tr>\n";
                out << "</table>\n";
            }
            for (const auto& w : report.warnings) out << "<p>warning: " << html(w) << "</p>\n";
            out << "</body>\n</html>\n";
            break;
        }
        case ReportFormat::Tex: {
            out << "\\begin{table}\n\\centering\n\\caption{Top " << report.n << " crucial entities of "
                << tex(report.projectName) << "}\n\\begin{tabular}{lr}\n\\hline\n";
            for (const auto& r : report.rankings) {
                out << "\\multicolumn{2}{c}{\\textbf{" << tex(metricTitle(r.metric)) << "}} \\\\\n\\hline\n";
                for (const auto& e : r.entries) out << tex(e.id) << " & " << scoreText(r.metric, e.score) << " \\\\\n";
                out << "\\hline\n";
            }
            out << "\\end{tabular}\n\\end{table}\n";
            break;
        }
        case ReportFormat::Csv: {
            out << "metric,rank,id,score\n";
            for (const auto& r : report.rankings) {
                std::size_t rank = 1;
                for (const auto& e : r.entries)
                    out << to_string(r.metric) << ',' << rank++ << ',' << csv(e.id) << ',' << formatGeneral(e.score)
                        << "\n";
            }
            break;
        }
        case ReportFormat::Json: {
            Json j;
            j["projectName"] = report.projectName;
            j["n"] = report.n;
            j["katzAlphaUsed"] = report.katzAlphaUsed;
            j["warnings"] = report.warnings;
            Json rankings = Json::array();
            for (const auto& r : report.rankings) {
                Json entries = Json::array();
                for (const auto& e : r.entries) entries.push_back({{"id", e.id}, {"score", e.score}});
                rankings.push_back({{"metric", to_string(r.metric)}, {"entries", entries}});
            }
            j["rankings"] = rankings;
            out << j.dump(2) << "\n";
            break;
        }
    }
    return out.str();
}

std::string renderPartitions(const std::string& project, const std::vector<PartitionResult>& results,
                             ReportFormat format, const SemanticCodeGraph* graph) {
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Txt: {
            std::vector<std::vector<std::string>> table{kPartitionHeader};
            for (const auto& r : results) table.push_back(partitionCells(r));
            std::vector<std::size_t> width(kPartitionHeader.size(), 0);
            for (const auto& row : table)
                for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
            out << "Partitioning of " << project << "\n";
            for (const auto& row : table) {
                std::string line;
                for (std::size_t c = 0; c < row.size(); ++c) {
                    auto cell = row[c];
                    if (c + 1 < row.size()) cell.resize(width[c] + 2, ' ');
                    line += cell;
                }
                out << line << "\n";
            }
            break;
        }
        case ReportFormat::Html: {
            out << htmlHead("Partitioning: " + project) << "<table>\n<tr>";
            for (const auto& h : kPartitionHeader) out << "<th>" << html(h) << "</th>";
            out << "</tr>\n";
            for (const auto& r : results) {
                out << "<tr>";
                for (const auto& cell : partitionCells(r)) out << "<td>" << html(cell) << "</td>";
                out << "</tr>\n";
            }
            out << "</table>\n";
            if (graph) {
                out << "<h2>Dominant partition per package and file</h2>\n";
                for (const auto& r : results) out << dominantHtml(*graph, r);
            }
            out << "</body>\n</html>\n";
            break;
        }
        case ReportFormat::Tex: {
            out << "\\begin{table}\n\\centering\n\\caption{Partitioning quality of " << tex(project)
                << "}\n\\begin{tabular}{llrrrrrrrl}\n\\hline\n";
            for (std::size_t c = 0; c < kPartitionHeader.size(); ++c)
                out << (c ? " & " : "") << tex(kPartitionHeader[c]);
            out << " \\\\\n\\hline\n";
            for (const auto& r : results) {
                auto cells = partitionCells(r);
                for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? " & " : "") << tex(cells[c]);
                out << " \\\\\n";
            }
            out << "\\hline\n\\end{tabular}\n\\end{table}\n";
            break;
        }
        case ReportFormat::Csv: {
            out << "algorithm,k,internalEdges,cutEdges,modularityRatio,avgClusteringCoefficient,"
                   "fileWeightedAccuracy,fileAverageAccuracy,packageWeightedAccuracy,packageAverageAccuracy,"
                   "partitionVariance,sizes\n";
            for (const auto& r : results) {
                const auto& q = r.quality;
                std::string sizes;
                for (std::size_t i = 0; i < q.sizes.size(); ++i) sizes += (i ? ";" : "") + std::to_string(q.sizes[i]);
                out << r.algorithm << ',' << r.k << ',' << q.internalEdges << ',' << q.cutEdges << ','
                    << formatGeneral(q.modularityRatio) << ',' << formatGeneral(q.avgClusteringCoefficient) << ','
                    << formatGeneral(q.fileWeightedAccuracy) << ',' << formatGeneral(q.fileAverageAccuracy) << ','
                    << formatGeneral(q.packageWeightedAccuracy) << ',' << formatGeneral(q.packageAverageAccuracy)
                    << ',' << formatGeneral(q.partitionVariance) << ',' << sizes << "\n";
            }
            break;
        }
        case ReportFormat::Json: {
            Json rows = Json::array();
            for (const auto& r : results) {
                const auto& q = r.quality;
                Json assignment = Json::object();
                for (std::size_t i = 0; i < r.ids.size(); ++i) assignment[r.ids[i]] = r.assignment[i];
                rows.push_back({{"algorithm", r.algorithm},
                                {"k", r.k},
                                {"internalEdges", q.internalEdges},
                                {"cutEdges", q.cutEdges},
                                {"modularityRatio", jsonNumber(q.modularityRatio)},
                                {"avgClusteringCoefficient", q.avgClusteringCoefficient},
                                {"fileWeightedAccuracy", q.fileWeightedAccuracy},
                                {"fileAverageAccuracy", q.fileAverageAccuracy},
                                {"packageWeightedAccuracy", q.packageWeightedAccuracy},
                                {"packageAverageAccuracy", q.packageAverageAccuracy},
                                {"partitionVariance", q.partitionVariance},
                                {"sizes", q.sizes},
                                {"distributionPercent", q.distributionPercent},
                                {"assignment", assignment}});
            }
            Json j;
            j["projectName"] = project;
            j["results"] = rows;
            out << j.dump(2) << "\n";
            break;
        }
    }
    return out.str();
}

}  // namespace scg
