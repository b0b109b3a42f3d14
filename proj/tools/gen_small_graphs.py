#!/usr/bin/env python3
"""Writes every connected simple graph on 1..7 vertices, up to isomorphism.

Output: one graph per line, "n u1 v1 u2 v2 ..." with 0-indexed endpoints.
"""
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def main():
    out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
    out.write("# connected simple graphs, n <= 7, from the graph atlas\n")
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or not nx.is_connected(g):
            continue
        flat = " ".join(f"{u} {v}" for u, v in sorted(tuple(sorted(e)) for e in g.edges()))
        out.write(f"{n} {flat}".rstrip() + "\n")


if __name__ == "__main__":
    main()
