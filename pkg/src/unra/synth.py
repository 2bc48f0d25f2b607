"""Planted-partition network generator for desk-scale experiments.

Nodes carry their ground-truth community in the local id (``c0_p3`` is paper
3 of community 0), so generated corpora are self-describing: papers are
source 1, authors source 2, one document per paper, labels are community
ids.  Edges are dense inside a community and sparse between communities;
each community draws document words from its own pool, which shares a
configurable fraction of words with every other pool.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import token_namespace
from .netio import HeteroNetwork, NodeRef

_MASK64 = (1 << 64) - 1
_SYNTH_STREAM = 0x5F17


@dataclass
class SynthConfig:
    communities: int = 2
    papers: int = 100
    authors: int = 60
    overlap: float = 0.0
    words_per_doc: int = 60
    pool_size: int = 40
    intra_density: float = 0.15
    inter_density: float = 0.02
    min_authors_per_paper: int = 1
    max_authors_per_paper: int = 3
    label_fraction: float = 1.0
    seed: int = 1

    def validate(self):
        if self.communities < 1:
            raise ValidationError("communities must be >= 1")
        if self.papers < self.communities or self.authors < self.communities:
            raise ValidationError("need at least one paper and author per community")
        if not 0.0 <= self.overlap <= 1.0:
            raise ValidationError("overlap must lie in [0, 1]")
        if self.words_per_doc < 1 or self.pool_size < 1:
            raise ValidationError("words_per_doc and pool_size must be >= 1")
        for name in ("intra_density", "inter_density", "label_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1]")
        if not 1 <= self.min_authors_per_paper <= self.max_authors_per_paper:
            raise ValidationError("need 1 <= min_authors_per_paper <= max_authors_per_paper")


def _split_counts(total: int, parts: int) -> list[int]:
    base, rem = divmod(total, parts)
    return [base + 1 if c < rem else base for c in range(parts)]


def _community_names(counts: list[int], kind: str) -> tuple[list[str], np.ndarray]:
    names = []
    comm = []
    for c, count in enumerate(counts):
        for i in range(count):
            names.append(f"c{c}_{kind}{i}")
            comm.append(c)
    return names, np.array(comm)


def _random_edges(rng, names, comm, intra: float, inter: float):
    n = len(names)
    if n < 2:
        return []
    ii, jj = np.triu_indices(n, k=1)
    prob = np.where(comm[ii] == comm[jj], intra, inter)
    mask = rng.random(len(ii)) < prob
    pairs = {
        (min(names[a], names[b]), max(names[a], names[b]))
        for a, b in zip(ii[mask], jj[mask])
    }
    return sorted(pairs)


def generate(config: SynthConfig) -> HeteroNetwork:
    """Build the network in memory; write it with netio.save_network."""
    config.validate()
    rng = np.random.default_rng(
        np.random.SeedSequence((config.seed & _MASK64, _SYNTH_STREAM))
    )
    paper_names, paper_comm = _community_names(
        _split_counts(config.papers, config.communities), "p"
    )
    author_names, author_comm = _community_names(
        _split_counts(config.authors, config.communities), "a"
    )
    edges = {
        1: _random_edges(rng, paper_names, paper_comm,
                         config.intra_density, config.inter_density),
        2: _random_edges(rng, author_names, author_comm,
                         config.intra_density, config.inter_density),
    }

    shared_count = int(round(config.overlap * config.pool_size))
    shared = [f"sw{j}" for j in range(shared_count)]
    pools = [
        shared + [f"c{c}w{j}" for j in range(config.pool_size - shared_count)]
        for c in range(config.communities)
    ]
    authors_by_comm = [
        [name for name, ac in zip(author_names, author_comm) if ac == c]
        for c in range(config.communities)
    ]

    documents: dict[int, list[str]] = {}
    links: dict[int, list[NodeRef]] = {}
    for idx, (pname, c) in enumerate(zip(paper_names, paper_comm)):
        pool = pools[c]
        documents[idx] = [pool[i] for i in rng.integers(len(pool), size=config.words_per_doc)]
        candidates = authors_by_comm[c]
        count = int(rng.integers(config.min_authors_per_paper,
                                 config.max_authors_per_paper + 1))
        chosen = rng.choice(len(candidates), size=min(count, len(candidates)), replace=False)
        links[idx] = [NodeRef(1, pname)] + [NodeRef(2, candidates[i]) for i in sorted(chosen)]

    labeled_count = int(round(config.label_fraction * config.papers))
    if labeled_count >= config.papers:
        labeled_ids = list(range(config.papers))
    else:
        labeled_ids = sorted(rng.choice(config.papers, size=labeled_count, replace=False))
    labels = {int(idx): f"c{paper_comm[idx]}" for idx in labeled_ids}

    nodes: dict[int, set] = {1: set(), 2: set()}
    for k in (1, 2):
        for a, b in edges[k]:
            nodes[k].add(a)
            nodes[k].add(b)
    for refs in links.values():
        for ref in refs:
            nodes[ref.source_id].add(ref.local_id)

    return HeteroNetwork(
        num_sources=2,
        nodes={k: sorted(v) for k, v in nodes.items()},
        edges=edges,
        documents=documents,
        links=links,
        labels=labels,
    )


def community_of_node(token: str) -> str:
    """Ground-truth community of a node token like ``1:c0_p3``."""
    ns = token_namespace(token)
    if ns[0] != "node":
        raise ValidationError(f"not a node token: {token!r}")
    local = token.partition(":")[2]
    head = local.partition("_")[0]
    if not head.startswith("c"):
        raise ValidationError(f"node {token!r} has no community prefix")
    return head
