"""Cross-checks the notebook bundle against networkx.

Usage: test_bundle.py <scg-cli> <corpus-dir>
"""

import importlib.util
import json
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

import networkx as nx


def run(cli, *args):
    subprocess.run([cli, *args], check=True, stdout=subprocess.DEVNULL)


def load_helper(bundle):
    spec = importlib.util.spec_from_file_location("scg", bundle / "scg" / "__init__.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def simple_undirected(G):
    U = nx.Graph()
    U.add_nodes_from(G.nodes)
    U.add_edges_from((u, v) for u, v in G.edges() if u != v)
    return U


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    cli, corpus = sys.argv[1], Path(sys.argv[2])
    failures = []

    def check(ok, what):
        if not ok:
            failures.append(what)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for encoding in ("binary", "json"):
            ws = tmp / encoding / "corpus"
            shutil.copytree(corpus / "src", ws / "src")
            run(cli, "generate", str(ws), "-l", "java", *(["--json"] if encoding == "json" else []))
            out = tmp / encoding / "out"
            run(cli, "summary", str(ws), "-o", "json", "--out-dir", str(out))
            run(cli, "export", str(ws), "-o", "jupyter", "--out-dir", str(out))
            summary = json.loads((out / "corpus-summary.json").read_text())
            bundle = out / "corpus-jupyter"
            scg = load_helper(bundle)

            files = scg.read_scg(str(bundle / "corpus"))
            G = scg.create_graph(files)
            nodes = scg.create_nodes_df(files)
            tag = encoding + ": "
            check(len(files) == 25, tag + "expected 25 records, got %d" % len(files))
            check(G.number_of_nodes() == summary["nodeCount"], tag + "node count")
            check(G.number_of_edges() == summary["edgeCount"], tag + "edge count")
            check(len(nodes) == summary["nodeCount"], tag + "dataframe rows")
            kinds = nodes["kind"].value_counts().to_dict()
            check(kinds == summary["nodeKindDistribution"], tag + "kind distribution")
            check(int(nodes[nodes.kind == "FILE"]["loc"].sum()) == summary["totalLoc"], tag + "total loc")

            D = nx.DiGraph()
            D.add_nodes_from(G.nodes)
            D.add_edges_from((u, v) for u, v in G.edges() if u != v)
            check(close(nx.density(D), summary["density"]), tag + "density")
            U = simple_undirected(G)
            check(close(nx.transitivity(U), summary["globalClusteringCoefficient"]), tag + "transitivity")
            r = nx.degree_assortativity_coefficient(U)
            check(close(r, summary["degreeAssortativity"]), tag + "assortativity %r vs %r" % (
                r, summary["degreeAssortativity"]))
            check(close(summary["avgInDegree"], summary["edgeCount"] / summary["nodeCount"]), tag + "avg degree")

            if encoding == "binary":
                record = next((bundle / "corpus").rglob("*.semanticgraphdb"))
                data = bytearray(record.read_bytes())
                check(scg.decode_binary(bytes(data))["nodes"], tag + "decode")
                data[8] = 9  # first record tag
                try:
                    scg.decode_binary(bytes(data))
                    check(False, tag + "unknown tag accepted")
                except scg.ScgFormatError as e:
                    check("@ byte 8" in str(e), tag + "error offset: %s" % e)

            notebook = json.loads((bundle / "analysis.ipynb").read_text())
            check(notebook.get("nbformat") == 4 and notebook.get("cells"), tag + "notebook structure")
            csvs = list(bundle.glob("*-npart-6-mlv-fm.csv"))
            check(len(csvs) == 1, tag + "sample partition csv")

    for f in failures:
        print("FAIL", f)
    print("%d failures" % len(failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
