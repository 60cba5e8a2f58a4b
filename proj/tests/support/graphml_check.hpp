#pragma once

// Structural rules of the GraphML schema that the exporter relies on. The
// official XSD is not available offline, so these are checked directly.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace graphml {

inline std::vector<std::string> structuralProblems(const std::string& text) {
    namespace pt = boost::property_tree;
    std::vector<std::string> problems;
    auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };
    pt::ptree doc;
    try {
        std::istringstream in(text);
        pt::read_xml(in, doc);
    } catch (const std::exception& e) {
        fail(std::string("not well-formed XML: ") + e.what());
        return problems;
    }
    auto root = doc.get_child_optional("graphml");
    if (!root) {
        fail("root element is not <graphml>");
        return problems;
    }
    if (root->get<std::string>("<xmlattr>.xmlns", "") != "http://graphml.graphdrawing.org/xmlns")
        fail("missing GraphML namespace");

    const std::set<std::string> domains{"node", "edge", "graph", "all"};
    const std::set<std::string> types{"boolean", "int", "long", "float", "double", "string"};
    std::map<std::string, std::pair<std::string, std::string>> keys;  // id -> (domain, type)
    bool seenGraph = false;
    int graphs = 0;
    for (const auto& [tag, child] : *root) {
        if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
        if (tag == "key") {
            if (seenGraph) fail("<key> after <graph>");
            auto id = child.get<std::string>("<xmlattr>.id", "");
            auto domain = child.get<std::string>("<xmlattr>.for", "");
            auto type = child.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.type", '/'), "");
            if (id.empty()) fail("<key> without id");
            if (!domains.count(domain)) fail("key " + id + " has invalid for='" + domain + "'");
            if (!types.count(type)) fail("key " + id + " has invalid attr.type='" + type + "'");
            if (!keys.emplace(id, std::make_pair(domain, type)).second) fail("duplicate key " + id);
            continue;
        }
        if (tag != "graph") {
            fail("unexpected element <" + tag + ">");
            continue;
        }
        seenGraph = true;
        ++graphs;
        auto edgedefault = child.get<std::string>("<xmlattr>.edgedefault", "");
        if (edgedefault != "directed" && edgedefault != "undirected") fail("graph without valid edgedefault");
        std::set<std::string> nodes, edgeIds;
        auto checkData = [&](const pt::ptree& element, const std::string& domain) {
            for (const auto& [dtag, data] : element) {
                if (dtag != "data") continue;
                auto keyId = data.get<std::string>("<xmlattr>.key", "");
                auto key = keys.find(keyId);
                if (key == keys.end()) {
                    fail("data refers to undeclared key '" + keyId + "'");
                    continue;
                }
                if (key->second.first != domain && key->second.first != "all")
                    fail("key " + keyId + " used on a " + domain);
                if (key->second.second == "int" || key->second.second == "long") {
                    try {
                        std::size_t used = 0;
                        std::stoll(data.data(), &used);
                        if (used != data.data().size()) fail("non-integer value for " + keyId);
                    } catch (const std::exception&) {
                        fail("non-integer value for " + keyId);
                    }
                }
            }
        };
        for (const auto& [etag, element] : child) {
            if (etag != "node") continue;
            auto id = element.get<std::string>("<xmlattr>.id", "");
            if (id.empty() || !nodes.insert(id).second) fail("missing or duplicate node id '" + id + "'");
            checkData(element, "node");
        }
        for (const auto& [etag, element] : child) {
            if (etag != "edge") continue;
            auto id = element.get<std::string>("<xmlattr>.id", "");
            if (!id.empty() && !edgeIds.insert(id).second) fail("duplicate edge id " + id);
            if (!nodes.count(element.get<std::string>("<xmlattr>.source", "")))
                fail("edge " + id + " has an unknown source");
            if (!nodes.count(element.get<std::string>("<xmlattr>.target", "")))
                fail("edge " + id + " has an unknown target");
            checkData(element, "edge");
        }
    }
    if (graphs != 1) fail("expected exactly one <graph>");
    return problems;
}

}  // namespace graphml
