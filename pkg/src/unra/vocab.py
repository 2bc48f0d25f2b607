"""Frequency vocabularies and the binary coding trees built over them."""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import UnknownTokenError, ValidationError


@dataclass
class Vocabulary:
    """Tokens of one kind ranked by descending frequency, ties broken lexically.

    ``kind`` names the token universe ("words", "labels", or "nodes:<k>") and
    doubles as the key under which a model stores this vocabulary's tree
    parameters.
    """

    kind: str
    tokens: list[str]
    frequencies: np.ndarray
    index: dict[str, int] = field(init=False, repr=False)
    total_count: int = field(init=False)

    def __post_init__(self):
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        self.total_count = int(self.frequencies.sum())
        if len(self.index) != len(self.tokens):
            raise ValidationError(f"duplicate tokens in {self.kind} vocabulary")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index


def build_vocab(tokens: Iterable[str], kind: str, min_count: int = 1) -> Vocabulary:
    """Count a token stream and keep tokens with frequency >= min_count."""
    counts = Counter(tokens)
    kept = sorted(
        ((tok, n) for tok, n in counts.items() if n >= min_count),
        key=lambda item: (-item[1], item[0]),
    )
    if not kept:
        raise ValidationError(
            f"empty {kind} vocabulary after min_count={min_count} filtering"
        )
    return Vocabulary(
        kind=kind,
        tokens=[tok for tok, _ in kept],
        frequencies=np.array([n for _, n in kept], dtype=np.int64),
    )


@dataclass
class HuffmanTree:
    """Prefix-code tree over a vocabulary's tokens.

    Leaf i (a vocabulary index) has a root-to-leaf inner-vertex path
    ``path_matrix[i, :path_lengths[i]]`` and branch bits
    ``bit_matrix[i, :path_lengths[i]]`` (0 = first-merged child).  Inner
    vertices are numbered by creation order, so for n leaves the root is
    vertex n - 2.  A single-leaf tree has no inner vertices and empty codes.
    """

    vocab: Vocabulary
    inner_count: int
    path_matrix: np.ndarray   # int32 (n_leaves, max_depth)
    bit_matrix: np.ndarray    # int8  (n_leaves, max_depth)
    path_lengths: np.ndarray  # int32 (n_leaves,)

    @property
    def kind(self) -> str:
        return self.vocab.kind

    @property
    def leaf_count(self) -> int:
        return len(self.vocab)

    @property
    def max_depth(self) -> int:
        return self.path_matrix.shape[1]

    def code(self, leaf: int) -> np.ndarray:
        return self.bit_matrix[leaf, : self.path_lengths[leaf]]

    def path(self, leaf: int) -> np.ndarray:
        return self.path_matrix[leaf, : self.path_lengths[leaf]]


def build_huffman(vocab: Vocabulary) -> HuffmanTree:
    """Build the minimum expected-depth coding tree for a vocabulary.

    Merging pops the two lowest-frequency subtrees; ties prefer the earlier
    created subtree (leaves are created in vocabulary order, merged subtrees
    after all leaves).  The first-popped child of each merge takes bit 0.
    """
    n = len(vocab)
    freqs = vocab.frequencies
    # heap entries: (frequency, creation_order); creation_order < n means leaf i
    heap = [(int(freqs[i]), i) for i in range(n)]
    heapq.heapify(heap)
    first_child = np.empty(max(n - 1, 0), dtype=np.int64)
    second_child = np.empty(max(n - 1, 0), dtype=np.int64)
    for m in range(n - 1):
        f1, o1 = heapq.heappop(heap)
        f2, o2 = heapq.heappop(heap)
        first_child[m] = o1
        second_child[m] = o2
        heapq.heappush(heap, (f1 + f2, n + m))

    codes: list[list[int]] = [[] for _ in range(n)]
    paths: list[list[int]] = [[] for _ in range(n)]
    if n > 1:
        # walk down from the root, carrying the partial path and code
        stack = [(n - 2, [], [])]
        while stack:
            inner, path, code = stack.pop()
            path = path + [inner]
            for bit, child in ((0, first_child[inner]), (1, second_child[inner])):
                if child < n:
                    paths[child] = path
                    codes[child] = code + [bit]
                else:
                    stack.append((int(child) - n, path, code + [bit]))

    depth = max((len(c) for c in codes), default=0)
    path_matrix = np.zeros((n, depth), dtype=np.int32)
    bit_matrix = np.zeros((n, depth), dtype=np.int8)
    lengths = np.zeros(n, dtype=np.int32)
    for i in range(n):
        lengths[i] = len(codes[i])
        path_matrix[i, : lengths[i]] = paths[i]
        bit_matrix[i, : lengths[i]] = codes[i]

    return HuffmanTree(
        vocab=vocab,
        inner_count=max(n - 1, 0),
        path_matrix=path_matrix,
        bit_matrix=bit_matrix,
        path_lengths=lengths,
    )


def leaf_path(tree: HuffmanTree, token: str) -> tuple[np.ndarray, np.ndarray]:
    """Return (inner vertex path, branch bits) for a token's leaf."""
    try:
        leaf = tree.vocab.index[token]
    except KeyError:
        raise UnknownTokenError(token) from None
    return tree.path(leaf), tree.code(leaf)


def expected_code_length(tree: HuffmanTree) -> float:
    """Frequency-weighted mean code length; what the tree construction minimizes."""
    freqs = tree.vocab.frequencies.astype(np.float64)
    return float((freqs * tree.path_lengths).sum() / freqs.sum())


def write_vocab_dump(path, vocabs: Iterable[Vocabulary], trees: dict[str, HuffmanTree]):
    """Write token, frequency, and code (empty when no tree) for each vocabulary."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("token\tfrequency\tcode\n")
        for vocab in vocabs:
            tree = trees.get(vocab.kind)
            for i, tok in enumerate(vocab.tokens):
                code = "".join(str(b) for b in tree.code(i)) if tree is not None else ""
                fh.write(f"{tok}\t{int(vocab.frequencies[i])}\t{code}\n")
