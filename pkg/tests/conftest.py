import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from unra.netio import HeteroNetwork, NodeRef  # noqa: E402


def make_network(edges_by_source, documents=None, links=None, labels=None):
    """Assemble a network in canonical form from plain tuples."""
    num_sources = max(edges_by_source) if edges_by_source else 1
    nodes = {k: set() for k in range(1, num_sources + 1)}
    edges = {k: set() for k in range(1, num_sources + 1)}
    for k, pairs in edges_by_source.items():
        for a, b in pairs:
            nodes[k].add(a)
            nodes[k].add(b)
            edges[k].add((min(a, b), max(a, b)))
    links = {
        idx: [NodeRef(s, lid) for s, lid in refs] for idx, refs in (links or {}).items()
    }
    for refs in links.values():
        for ref in refs:
            nodes[ref.source_id].add(ref.local_id)
    return HeteroNetwork(
        num_sources=num_sources,
        nodes={k: sorted(v) for k, v in nodes.items()},
        edges={k: sorted(v) for k, v in edges.items()},
        documents=dict(sorted((documents or {}).items())),
        links=dict(sorted(links.items())),
        labels=dict(sorted((labels or {}).items())),
    )


@pytest.fixture
def tiny_network():
    """Two sources, two labeled documents, six words; the smallest full corpus."""
    return make_network(
        edges_by_source={
            1: [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
            2: [("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")],
        },
        documents={
            0: ["u1", "u2", "u3", "u1", "u2", "u3"],
            1: ["u4", "u5", "u6", "u4", "u5", "u6"],
        },
        links={0: [(1, "a"), (2, "w")], 1: [(1, "c"), (2, "y")]},
        labels={0: "L1", 1: "L2"},
    )


def write_network_files(network, directory):
    from unra.netio import save_network

    return save_network(network, directory)
