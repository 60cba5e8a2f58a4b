#include "scg/storage.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "scg/error.hpp"

namespace fs = std::filesystem;

namespace scg {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'G', 'R'};
constexpr std::uint16_t kVersion = 1;

enum RecordTag : std::uint8_t { kHeader = 1, kNode = 2, kEdge = 3 };

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        out_.append(s);
    }
    void location(const std::optional<Location>& l) {
        u8(l ? 1 : 0);
        if (!l) return;
        i32(l->startLine);
        i32(l->startCol);
        i32(l->endLine);
        i32(l->endCol);
    }
    void raw(std::string_view s) { out_.append(s); }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    Reader(std::string_view bytes, const std::string& name, std::size_t base = 0)
        : bytes_(bytes), name_(name), base_(base) {}

    std::size_t offset() const { return pos_; }
    bool atEnd() const { return pos_ == bytes_.size(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError(name_, base_ + pos_, what);
    }
    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) fail("truncated record");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes_[pos_++]) << (8 * i));
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::string str() {
        auto n = u32();
        need(n);
        std::string s(bytes_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    std::string_view take(std::size_t n) {
        need(n);
        auto s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::optional<Location> location() {
        auto flag = u8();
        if (flag > 1) fail("bad location flag");
        if (!flag) return std::nullopt;
        Location l;
        l.startLine = i32();
        l.startCol = i32();
        l.endLine = i32();
        l.endCol = i32();
        return l;
    }

private:
    std::string_view bytes_;
    const std::string& name_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

void writeNode(Writer& w, const SemanticNode& n) {
    w.str(n.id);
    w.str(to_string(n.kind));
    w.str(n.displayName);
    w.str(n.packageName);
    w.str(n.fileUri);
    w.location(n.location);
    w.u32(static_cast<std::uint32_t>(n.loc));
    w.u32(static_cast<std::uint32_t>(n.properties.size()));
    for (const auto& [k, v] : n.properties) {
        w.str(k);
        w.str(v);
    }
}

void writeEdge(Writer& w, const SemanticEdge& e) {
    w.str(e.from);
    w.str(e.to);
    w.str(e.type);
    w.location(e.location);
}

void appendRecord(Writer& out, RecordTag tag, std::string payload) {
    out.u8(tag);
    out.u32(static_cast<std::uint32_t>(payload.size()));
    out.raw(payload);
}

nlohmann::json locationJson(const std::optional<Location>& l) {
    if (!l) return nullptr;
    return nlohmann::json::array({l->startLine, l->startCol, l->endLine, l->endCol});
}

std::optional<Location> locationFromJson(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("location must be [l0,c0,l1,c1]");
    return Location{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

bool isRecordFile(const fs::path& p) {
    auto name = p.filename().string();
    return name.ends_with(kBinaryExtension) ||
           (name.ends_with(kJsonExtension) && name.find(kBinaryExtension) != std::string::npos);
}

std::string readFile(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void checkRelative(const std::string& fileUri) {
    fs::path p(fileUri);
    if (fileUri.empty() || p.is_absolute())
        throw GraphError("file uri must be a workspace-relative path: '" + fileUri + "'");
    for (const auto& part : p)
        if (part == "..") throw GraphError("file uri escapes the workspace: " + fileUri);
}

}  // namespace

std::string encodeBinary(const FileRecord& record) {
    Writer out;
    out.raw(std::string_view(kMagic, 4));
    out.u16(kVersion);
    out.u16(0);
    {
        Writer h;
        h.str(record.projectName);
        h.str(record.fileUri);
        h.u32(static_cast<std::uint32_t>(record.nodes.size()));
        h.u32(static_cast<std::uint32_t>(record.edges.size()));
        appendRecord(out, kHeader, h.take());
    }
    for (const auto& n : record.nodes) {
        Writer w;
        writeNode(w, n);
        appendRecord(out, kNode, w.take());
    }
    for (const auto& e : record.edges) {
        Writer w;
        writeEdge(w, e);
        appendRecord(out, kEdge, w.take());
    }
    return out.take();
}

FileRecord decodeBinary(std::string_view bytes, const std::string& name) {
    Reader in(bytes, name);
    if (in.take(4) != std::string_view(kMagic, 4)) throw FormatError(name, 0, "bad magic");
    if (auto v = in.u16(); v != kVersion) throw FormatError(name, 4, "unsupported version " + std::to_string(v));
    in.u16();

    FileRecord record;
    bool haveHeader = false;
    std::uint32_t expectNodes = 0, expectEdges = 0;
    while (!in.atEnd()) {
        const auto recordStart = in.offset();
        const auto tag = in.u8();
        const auto length = in.u32();
        const auto payloadStart = in.offset();
        Reader body(in.take(length), name, payloadStart);
        switch (tag) {
            case kHeader:
                if (haveHeader) throw FormatError(name, recordStart, "duplicate header record");
                record.projectName = body.str();
                record.fileUri = body.str();
                expectNodes = body.u32();
                expectEdges = body.u32();
                haveHeader = true;
                break;
            case kNode: {
                if (!haveHeader) throw FormatError(name, recordStart, "node before header");
                SemanticNode n;
                n.id = body.str();
                auto kindOffset = body.offset();
                auto kind = body.str();
                auto parsed = parse_node_kind(kind);
                if (!parsed) throw FormatError(name, payloadStart + kindOffset, "unknown node kind '" + kind + "'");
                n.kind = *parsed;
                n.displayName = body.str();
                n.packageName = body.str();
                n.fileUri = body.str();
                n.location = body.location();
                n.loc = static_cast<int>(body.u32());
                auto props = body.u32();
                for (std::uint32_t i = 0; i < props; ++i) {
                    auto k = body.str();
                    n.properties[k] = body.str();
                }
                record.nodes.push_back(std::move(n));
                break;
            }
            case kEdge: {
                if (!haveHeader) throw FormatError(name, recordStart, "edge before header");
                SemanticEdge e;
                e.from = body.str();
                e.to = body.str();
                e.type = body.str();
                e.location = body.location();
                record.edges.push_back(std::move(e));
                break;
            }
            default:
                throw FormatError(name, recordStart, "unknown record tag " + std::to_string(tag));
        }
        if (!body.atEnd()) throw FormatError(name, payloadStart + body.offset(), "trailing bytes in record");
    }
    if (!haveHeader) throw FormatError(name, in.offset(), "missing header record");
    if (record.nodes.size() != expectNodes || record.edges.size() != expectEdges)
        throw FormatError(name, in.offset(), "record count does not match header");
    return record;
}

std::string encodeJson(const FileRecord& record) {
    nlohmann::json j;
    j["format"] = "scg-record";
    j["version"] = kVersion;
    j["projectName"] = record.projectName;
    j["fileUri"] = record.fileUri;
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (const auto& n : record.nodes) {
        nodes.push_back({{"id", n.id},
                         {"kind", to_string(n.kind)},
                         {"displayName", n.displayName},
                         {"packageName", n.packageName},
                         {"fileUri", n.fileUri},
                         {"location", locationJson(n.location)},
                         {"loc", n.loc},
                         {"properties", n.properties}});
    }
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const auto& e : record.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"type", e.type}, {"location", locationJson(e.location)}});
    return j.dump(1) + "\n";
}

FileRecord decodeJson(std::string_view text, const std::string& name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(name, e.byte, e.what());
    }
    FileRecord record;
    try {
        if (j.value("format", "") != "scg-record") throw std::invalid_argument("not an scg-record document");
        record.projectName = j.at("projectName").get<std::string>();
        record.fileUri = j.at("fileUri").get<std::string>();
        for (const auto& jn : j.at("nodes")) {
            SemanticNode n;
            n.id = jn.at("id").get<std::string>();
            auto kind = jn.at("kind").get<std::string>();
            auto parsed = parse_node_kind(kind);
            if (!parsed) throw std::invalid_argument("unknown node kind '" + kind + "'");
            n.kind = *parsed;
            n.displayName = jn.at("displayName").get<std::string>();
            n.packageName = jn.at("packageName").get<std::string>();
            n.fileUri = jn.at("fileUri").get<std::string>();
            n.location = locationFromJson(jn.at("location"));
            n.loc = jn.at("loc").get<int>();
            n.properties = jn.at("properties").get<std::map<std::string, std::string>>();
            record.nodes.push_back(std::move(n));
        }
        for (const auto& je : j.at("edges")) {
            SemanticEdge e;
            e.from = je.at("from").get<std::string>();
            e.to = je.at("to").get<std::string>();
            e.type = je.at("type").get<std::string>();
            e.location = locationFromJson(je.at("location"));
            record.edges.push_back(std::move(e));
        }
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        // JSON documents are validated structurally after parsing; no byte offset is tracked.
        throw FormatError(name, 0, e.what());
    }
    return record;
}

std::vector<FileRecord> splitByFile(const SemanticCodeGraph& graph) {
    std::map<std::string, FileRecord> byFile;
    std::set<std::string> referencedStubs;
    for (const auto& [id, n] : graph.nodes()) {
        if (n.isStub()) continue;
        if (n.fileUri.empty()) throw GraphError("node without a source file cannot be saved: " + id);
        checkRelative(n.fileUri);
        auto& rec = byFile[n.fileUri];
        rec.fileUri = n.fileUri;
        rec.nodes.push_back(n);
    }
    std::vector<const SemanticEdge*> edges;
    for (const auto& e : graph.edges()) edges.push_back(&e);
    std::sort(edges.begin(), edges.end(), [](const auto* a, const auto* b) { return edgeKeyLess(*a, *b); });

    std::map<std::string, std::set<std::string>> stubsPerFile;
    for (const auto* e : edges) {
        const auto* from = graph.find(e->from);
        if (from->isStub()) throw GraphError("edge originates at an external node: " + e->from + " -> " + e->to);
        auto& rec = byFile[from->fileUri];
        rec.edges.push_back(*e);
        if (graph.find(e->to)->isStub()) {
            stubsPerFile[from->fileUri].insert(e->to);
            referencedStubs.insert(e->to);
        }
    }
    for (const auto& [id, n] : graph.nodes())
        if (n.isStub() && !referencedStubs.contains(id))
            throw GraphError("external node is not referenced by any edge: " + id);

    std::vector<FileRecord> out;
    out.reserve(byFile.size());
    for (auto& [uri, rec] : byFile) {
        rec.projectName = graph.projectName();
        for (const auto& stub : stubsPerFile[uri]) rec.nodes.push_back(*graph.find(stub));
        std::sort(rec.nodes.begin(), rec.nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<fs::path> listRecordFiles(const fs::path& metadataDir) {
    std::vector<fs::path> files;
    std::error_code ec;
    if (!fs::is_directory(metadataDir, ec)) return files;
    for (auto it = fs::recursive_directory_iterator(metadataDir, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec)) {
        if (it->is_regular_file() && isRecordFile(it->path())) files.push_back(it->path());
    }
    if (ec) throw DataError("cannot list " + metadataDir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<fs::path> saveGraph(const SemanticCodeGraph& graph, const fs::path& workspaceRoot, Encoding encoding) {
    std::error_code ec;
    if (!fs::is_directory(workspaceRoot, ec)) throw DataError("workspace does not exist: " + workspaceRoot.string());
    auto records = splitByFile(graph);

    const auto metaDir = workspaceRoot / kMetadataDir;
    fs::create_directories(metaDir, ec);
    if (ec) throw DataError("cannot create " + metaDir.string() + ": " + ec.message());

    std::set<fs::path> written;
    std::vector<fs::path> paths;
    for (const auto& rec : records) {
        auto name = rec.fileUri + std::string(kBinaryExtension);
        if (encoding == Encoding::Json) name += kJsonExtension;
        auto path = metaDir / fs::path(name);
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw DataError("cannot create " + path.parent_path().string() + ": " + ec.message());
        auto bytes = encoding == Encoding::Binary ? encodeBinary(rec) : encodeJson(rec);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        if (!out) throw DataError("cannot write " + path.string());
        written.insert(path);
        paths.push_back(path);
    }
    for (const auto& stale : listRecordFiles(metaDir))
        if (!written.contains(stale)) fs::remove(stale, ec);
    std::sort(paths.begin(), paths.end());
    return paths;
}

SemanticCodeGraph loadGraph(const fs::path& workspaceRoot) {
    const auto metaDir = workspaceRoot / kMetadataDir;
    std::error_code ec;
    if (!fs::is_directory(metaDir, ec))
        throw DataError("no SCG metadata in " + workspaceRoot.string() +
                        " (missing .semanticgraphs); run `scg-cli generate -l java " + workspaceRoot.string() + "` first");

    std::vector<FileRecord> records;
    for (const auto& path : listRecordFiles(metaDir)) {
        auto bytes = readFile(path);
        auto name = path.string();
        records.push_back(path.extension() == kJsonExtension ? decodeJson(bytes, name) : decodeBinary(bytes, name));
    }

    SemanticCodeGraph graph;
    for (const auto& rec : records) {
        if (graph.projectName().empty()) graph.setProjectName(rec.projectName);
        for (const auto& n : rec.nodes) graph.addNode(n);
    }
    for (const auto& rec : records)
        for (const auto& e : rec.edges) graph.addEdge(e);
    if (graph.projectName().empty()) {
        auto canonical = fs::weakly_canonical(workspaceRoot, ec);
        graph.setProjectName((ec ? workspaceRoot : canonical).filename().string());
    }
    graph.validate();
    return graph;
}

}  // namespace scg
