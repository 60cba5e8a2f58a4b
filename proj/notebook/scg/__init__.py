"""Helpers for analysing SCG data in a notebook.

    scg_files = read_scg("project")      # directory holding .semanticgraphs
    G = create_graph(scg_files)          # networkx MultiDiGraph
    nodes = create_nodes_df(scg_files)   # pandas DataFrame
"""

import json
import os
import struct

METADATA_DIR = ".semanticgraphs"
BINARY_EXTENSION = ".semanticgraphdb"
JSON_EXTENSION = ".json"

_MAGIC = b"SCGR"
_VERSION = 1
_TAG_HEADER, _TAG_NODE, _TAG_EDGE = 1, 2, 3


class ScgFormatError(ValueError):
    pass


class ScgFiles:
    """The records read from one workspace, one per metadata file."""

    def __init__(self, records):
        self.records = records

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def nodes(self):
        """Merged node dicts by id; a located occurrence wins over a stub."""
        merged = {}
        for record in self.records:
            for node in record["nodes"]:
                known = merged.get(node["id"])
                if known is None or (known["location"] is None and node["location"] is not None):
                    merged[node["id"]] = node
        return merged

    def edges(self):
        """Edge dicts, unique on (from, to, type)."""
        seen = set()
        out = []
        for record in self.records:
            for edge in record["edges"]:
                key = (edge["from"], edge["to"], edge["type"])
                if key not in seen:
                    seen.add(key)
                    out.append(edge)
        return out


class _Reader:
    def __init__(self, data, name, base=0):
        self.data = data
        self.name = name
        self.base = base
        self.pos = 0

    def fail(self, what):
        raise ScgFormatError("%s @ byte %d: %s" % (self.name, self.base + self.pos, what))

    def take(self, n):
        if len(self.data) - self.pos < n:
            self.fail("truncated record")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u8(self):
        return self.take(1)[0]

    def u16(self):
        return struct.unpack("<H", self.take(2))[0]

    def u32(self):
        return struct.unpack("<I", self.take(4))[0]

    def i32(self):
        return struct.unpack("<i", self.take(4))[0]

    def str(self):
        return self.take(self.u32()).decode("utf-8")

    def location(self):
        flag = self.u8()
        if flag == 0:
            return None
        if flag != 1:
            self.fail("bad location flag")
        return [self.i32(), self.i32(), self.i32(), self.i32()]


def decode_binary(data, name="<bytes>"):
    r = _Reader(data, name)
    if r.take(4) != _MAGIC:
        raise ScgFormatError("%s @ byte 0: bad magic" % name)
    version = r.u16()
    if version != _VERSION:
        raise ScgFormatError("%s @ byte 4: unsupported version %d" % (name, version))
    r.u16()
    record = {"projectName": "", "fileUri": "", "nodes": [], "edges": []}
    while r.pos < len(data):
        tag = r.u8()
        length = r.u32()
        start = r.pos
        body = _Reader(r.take(length), name, start)
        if tag == _TAG_HEADER:
            record["projectName"] = body.str()
            record["fileUri"] = body.str()
            body.u32()
            body.u32()
        elif tag == _TAG_NODE:
            node = {
                "id": body.str(),
                "kind": body.str(),
                "displayName": body.str(),
                "packageName": body.str(),
                "fileUri": body.str(),
                "location": body.location(),
                "loc": body.u32(),
            }
            props = {}
            for _ in range(body.u32()):
                key = body.str()
                props[key] = body.str()
            node["properties"] = props
            record["nodes"].append(node)
        elif tag == _TAG_EDGE:
            record["edges"].append({
                "from": body.str(),
                "to": body.str(),
                "type": body.str(),
                "location": body.location(),
            })
        else:
            raise ScgFormatError("%s @ byte %d: unknown record tag %d" % (name, start - 5, tag))
        if body.pos != length:
            body.fail("trailing bytes in record")
    return record


def decode_json(text, name="<json>"):
    doc = json.loads(text)
    if doc.get("format") != "scg-record":
        raise ScgFormatError("%s: not an scg-record document" % name)
    return {
        "projectName": doc["projectName"],
        "fileUri": doc["fileUri"],
        "nodes": [dict(n, properties=n.get("properties", {})) for n in doc["nodes"]],
        "edges": list(doc["edges"]),
    }


def _record_files(metadata_dir):
    found = []
    for root, _dirs, files in os.walk(metadata_dir):
        for f in files:
            if f.endswith(BINARY_EXTENSION) or (f.endswith(JSON_EXTENSION) and BINARY_EXTENSION in f):
                found.append(os.path.join(root, f))
    return sorted(found)


def read_scg(workspace):
    """Reads every record under <workspace>/.semanticgraphs."""
    metadata_dir = os.path.join(workspace, METADATA_DIR)
    if not os.path.isdir(metadata_dir):
        raise FileNotFoundError(
            "no SCG data in %s; run `scg-cli generate -l java %s` first" % (workspace, workspace))
    records = []
    for path in _record_files(metadata_dir):
        if path.endswith(JSON_EXTENSION):
            with open(path, encoding="utf-8") as f:
                records.append(decode_json(f.read(), path))
        else:
            with open(path, "rb") as f:
                records.append(decode_binary(f.read(), path))
    return ScgFiles(records)


def create_graph(scg_files):
    """MultiDiGraph with node attributes kind, loc, package, file, displayName
    and edge attribute type. Parallel edges of different types are kept."""
    import networkx as nx

    G = nx.MultiDiGraph()
    for node_id, node in sorted(scg_files.nodes().items()):
        G.add_node(node_id, kind=node["kind"], loc=node["loc"], package=node["packageName"],
                   file=node["fileUri"], displayName=node["displayName"])
    for edge in scg_files.edges():
        G.add_edge(edge["from"], edge["to"], key=edge["type"], type=edge["type"])
    return G


def create_nodes_df(scg_files):
    """One row per node: id, kind, displayName, package, file, loc."""
    import pandas as pd

    rows = [
        {
            "id": node_id,
            "kind": node["kind"],
            "displayName": node["displayName"],
            "package": node["packageName"],
            "file": node["fileUri"],
            "loc": node["loc"],
        }
        for node_id, node in sorted(scg_files.nodes().items())
    ]
    return pd.DataFrame(rows, columns=["id", "kind", "displayName", "package", "file", "loc"])
