"""Heterogeneous network data model and on-disk corpus formats.

All corpus files are tab-separated UTF-8 text:

    edges_k.tsv   local_id<TAB>local_id          (source k implied by file position)
    docs.tsv      doc_index<TAB>word word ...
    links.tsv     doc_index<TAB>src:id[<TAB>src:id ...]
    labels.tsv    doc_index<TAB>label_token
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError

_FORBIDDEN_ID_CHARS = (":",)


@dataclass(frozen=True, order=True)
class NodeRef:
    """A node identified by its source number and a source-local id."""

    source_id: int
    local_id: str

    def __post_init__(self):
        if self.source_id < 1:
            raise ValidationError(f"source_id must be >= 1, got {self.source_id}")
        if not self.local_id or self.local_id.split() != [self.local_id]:
            raise ValidationError(f"bad local id: {self.local_id!r}")
        if any(c in self.local_id for c in _FORBIDDEN_ID_CHARS):
            raise ValidationError(f"local id may not contain ':': {self.local_id!r}")

    def render(self) -> str:
        return f"{self.source_id}:{self.local_id}"

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "NodeRef":
        head, sep, rest = text.partition(":")
        if not sep:
            raise ValidationError(f"node reference {text!r} is not of the form src:id")
        try:
            source_id = int(head)
        except ValueError:
            raise ValidationError(f"bad source id in node reference {text!r}") from None
        return cls(source_id, rest)


@dataclass
class HeteroNetwork:
    """K node sources with their edges, plus documents, links, and labels.

    ``nodes`` holds sorted local ids per source; a node exists iff it appears
    as an edge endpoint or as a link target.  Edges are undirected, deduplicated,
    and stored with endpoints in sorted order.
    """

    num_sources: int
    nodes: dict[int, list[str]]
    edges: dict[int, list[tuple[str, str]]]
    documents: dict[int, list[str]]
    links: dict[int, list[NodeRef]]
    labels: dict[int, str] = field(default_factory=dict)

    def node_refs(self, source_id: int) -> list[NodeRef]:
        return [NodeRef(source_id, lid) for lid in self.nodes[source_id]]

    def all_node_refs(self) -> Iterable[NodeRef]:
        for k in range(1, self.num_sources + 1):
            yield from self.node_refs(k)

    def has_node(self, ref: NodeRef) -> bool:
        if not 1 <= ref.source_id <= self.num_sources:
            return False
        return ref.local_id in self._node_sets()[ref.source_id]

    def adjacency(self, source_id: int) -> dict[str, list[str]]:
        """Neighbor lists (sorted) for one source."""
        adj: dict[str, list[str]] = {lid: [] for lid in self.nodes[source_id]}
        for a, b in self.edges[source_id]:
            adj[a].append(b)
            if a != b:
                adj[b].append(a)
        for lid in adj:
            adj[lid].sort()
        return adj

    def _node_sets(self) -> dict[int, set[str]]:
        return {k: set(v) for k, v in self.nodes.items()}


@dataclass
class ValidationReport:
    node_counts: dict[int, int]
    edge_counts: dict[int, int]
    document_count: int
    labeled_count: int
    isolated_nodes: list[NodeRef]
    unlinked_documents: list[int]
    labels_on_missing_documents: list[int]

    def summary(self) -> str:
        lines = []
        for k in sorted(self.node_counts):
            lines.append(
                f"source {k}: {self.node_counts[k]} nodes, {self.edge_counts[k]} edges"
            )
        lines.append(f"documents: {self.document_count} ({self.labeled_count} labeled)")
        lines.append(f"isolated nodes: {len(self.isolated_nodes)}")
        lines.append(f"unlinked documents: {len(self.unlinked_documents)}")
        lines.append(
            f"labels on missing documents: {len(self.labels_on_missing_documents)}"
        )
        return "\n".join(lines)


def _read_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            yield lineno, line


def _parse_doc_index(path, lineno, text) -> int:
    try:
        idx = int(text)
    except ValueError:
        raise ParseError(path, lineno, f"bad document index {text!r}") from None
    if idx < 0:
        raise ParseError(path, lineno, f"document index must be >= 0, got {idx}")
    return idx


def load_network(
    edge_paths: Sequence[str | Path],
    docs_path: str | Path,
    links_path: str | Path,
    labels_path: str | Path | None = None,
) -> HeteroNetwork:
    """Load a network from its corpus files; ``edge_paths`` are ordered by source id.

    Raises ParseError for grammar violations (with file and line number) and
    ValidationError for structural ones (bad source ids, duplicate indices,
    links or labels on unknown documents).
    """
    num_sources = len(edge_paths)
    nodes: dict[int, set[str]] = {k: set() for k in range(1, num_sources + 1)}
    edges: dict[int, set[tuple[str, str]]] = {k: set() for k in range(1, num_sources + 1)}

    for k, path in enumerate(edge_paths, start=1):
        for lineno, line in _read_lines(path):
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(path, lineno, f"expected 2 fields, got {len(fields)}")
            try:
                a = NodeRef(k, fields[0])
                b = NodeRef(k, fields[1])
            except ValidationError as exc:
                raise ParseError(path, lineno, str(exc)) from None
            nodes[k].add(a.local_id)
            nodes[k].add(b.local_id)
            edges[k].add((min(a.local_id, b.local_id), max(a.local_id, b.local_id)))

    documents: dict[int, list[str]] = {}
    for lineno, line in _read_lines(docs_path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(docs_path, lineno, f"expected 2 fields, got {len(fields)}")
        idx = _parse_doc_index(docs_path, lineno, fields[0])
        if idx in documents:
            raise ValidationError(f"{docs_path}:{lineno}: duplicate document index {idx}")
        documents[idx] = fields[1].split()

    links: dict[int, list[NodeRef]] = {}
    for lineno, line in _read_lines(links_path):
        fields = line.split("\t")
        if len(fields) < 2:
            raise ParseError(links_path, lineno, "expected doc index and at least one node")
        idx = _parse_doc_index(links_path, lineno, fields[0])
        if idx in links:
            raise ValidationError(f"{links_path}:{lineno}: duplicate link index {idx}")
        if idx not in documents:
            raise ValidationError(f"{links_path}:{lineno}: link for unknown document {idx}")
        refs = []
        for tok in fields[1:]:
            try:
                ref = NodeRef.parse(tok)
            except ValidationError as exc:
                raise ParseError(links_path, lineno, str(exc)) from None
            if not 1 <= ref.source_id <= num_sources:
                raise ValidationError(
                    f"{links_path}:{lineno}: source {ref.source_id} outside [1, {num_sources}]"
                )
            nodes[ref.source_id].add(ref.local_id)
            refs.append(ref)
        links[idx] = refs

    labels: dict[int, str] = {}
    if labels_path is not None:
        for lineno, line in _read_lines(labels_path):
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(labels_path, lineno, f"expected 2 fields, got {len(fields)}")
            idx = _parse_doc_index(labels_path, lineno, fields[0])
            label = fields[1]
            if not label or label.split() != [label]:
                raise ParseError(labels_path, lineno, f"bad label token {label!r}")
            if idx in labels:
                raise ValidationError(f"{labels_path}:{lineno}: duplicate label index {idx}")
            if idx not in documents:
                raise ValidationError(f"{labels_path}:{lineno}: label on unknown document {idx}")
            labels[idx] = label

    return HeteroNetwork(
        num_sources=num_sources,
        nodes={k: sorted(v) for k, v in nodes.items()},
        edges={k: sorted(v) for k, v in edges.items()},
        documents=dict(sorted(documents.items())),
        links=dict(sorted(links.items())),
        labels=dict(sorted(labels.items())),
    )


def save_network(network: HeteroNetwork, out_dir: str | Path) -> dict[str, Path]:
    """Write the network back to its corpus files; inverse of load_network."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    for k in range(1, network.num_sources + 1):
        path = out / f"edges_{k}.tsv"
        with open(path, "w", encoding="utf-8") as fh:
            for a, b in network.edges[k]:
                fh.write(f"{a}\t{b}\n")
        paths[f"edges_{k}"] = path

    paths["docs"] = out / "docs.tsv"
    with open(paths["docs"], "w", encoding="utf-8") as fh:
        for idx, words in network.documents.items():
            fh.write(f"{idx}\t{' '.join(words)}\n")

    paths["links"] = out / "links.tsv"
    with open(paths["links"], "w", encoding="utf-8") as fh:
        for idx, refs in network.links.items():
            fh.write("\t".join([str(idx)] + [r.render() for r in refs]) + "\n")

    if network.labels:
        paths["labels"] = out / "labels.tsv"
        with open(paths["labels"], "w", encoding="utf-8") as fh:
            for idx, label in network.labels.items():
                fh.write(f"{idx}\t{label}\n")
    return paths


def validate(network: HeteroNetwork) -> ValidationReport:
    """Summarize structural health of a network without mutating it."""
    degree: Counter[NodeRef] = Counter()
    for k in range(1, network.num_sources + 1):
        for a, b in network.edges[k]:
            degree[NodeRef(k, a)] += 1
            degree[NodeRef(k, b)] += 1

    isolated = [ref for ref in network.all_node_refs() if degree[ref] == 0]
    unlinked = [idx for idx in network.documents if idx not in network.links]
    orphan_labels = [idx for idx in network.labels if idx not in network.documents]

    return ValidationReport(
        node_counts={k: len(network.nodes[k]) for k in range(1, network.num_sources + 1)},
        edge_counts={k: len(network.edges[k]) for k in range(1, network.num_sources + 1)},
        document_count=len(network.documents),
        labeled_count=len(network.labels),
        isolated_nodes=sorted(isolated),
        unlinked_documents=sorted(unlinked),
        labels_on_missing_documents=sorted(orphan_labels),
    )
