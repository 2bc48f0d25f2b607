"""Uniform random walks over one node source of a network."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .netio import HeteroNetwork, NodeRef

_MASK64 = (1 << 64) - 1


def _seed_u64(seed: int) -> int:
    return seed & _MASK64


@dataclass
class WalkCorpus:
    source_id: int
    walks_per_node: int
    walk_length: int
    walks: list[list[NodeRef]]

    def __len__(self) -> int:
        return len(self.walks)

    def token_count(self) -> int:
        return sum(len(w) for w in self.walks)


def generate_walks(
    network: HeteroNetwork,
    source_id: int,
    walks_per_node: int,
    walk_length: int,
    seed: int,
) -> WalkCorpus:
    """Start ``walks_per_node`` truncated uniform walks from every node of one source.

    A walk stops early only at a dead end (isolated nodes yield length-1
    walks).  Node visit order is reshuffled before each pass and every walk
    draws from its own sub-seeded generator keyed by (seed, source, pass,
    start node), so the corpus is reproducible and order-independent.
    """
    if not 1 <= source_id <= network.num_sources:
        raise ValidationError(f"source {source_id} outside [1, {network.num_sources}]")
    if walks_per_node < 1 or walk_length < 1:
        raise ValidationError("walks_per_node and walk_length must be >= 1")

    locals_ = network.nodes[source_id]
    refs = [NodeRef(source_id, lid) for lid in locals_]
    pos = {lid: i for i, lid in enumerate(locals_)}
    adjacency = network.adjacency(source_id)
    neighbors = [
        np.array([pos[nb] for nb in adjacency[lid]], dtype=np.int64) for lid in locals_
    ]

    root = _seed_u64(seed)
    shuffle_rng = np.random.default_rng(np.random.SeedSequence((root, source_id)))
    walks: list[list[NodeRef]] = []
    for pass_idx in range(walks_per_node):
        order = shuffle_rng.permutation(len(locals_))
        for start in order:
            rng = np.random.default_rng(
                np.random.SeedSequence((root, source_id, pass_idx, int(start)))
            )
            cur = int(start)
            walk = [refs[cur]]
            while len(walk) < walk_length:
                nbrs = neighbors[cur]
                if len(nbrs) == 0:
                    break
                cur = int(nbrs[rng.integers(len(nbrs))])
                walk.append(refs[cur])
            walks.append(walk)
    return WalkCorpus(source_id, walks_per_node, walk_length, walks)


def corpus_node_frequencies(corpus: WalkCorpus) -> Counter:
    """Occurrence counts of rendered node tokens across all walks."""
    counts: Counter = Counter()
    for walk in corpus.walks:
        counts.update(ref.render() for ref in walk)
    return counts


def save_walks(corpora, path):
    """Dump walks one per line as space-separated src:id tokens."""
    with open(path, "w", encoding="utf-8") as fh:
        for corpus in corpora:
            for walk in corpus.walks:
                fh.write(" ".join(ref.render() for ref in walk) + "\n")
