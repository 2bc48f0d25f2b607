"""Joint embedding training.

Three pair sources share one parameter table and one pass machinery:

  structure  node -> nearby node in a random walk, one pass per node source,
             weighted alpha
  content    linked node -> document word within a window, weighted 1 - alpha
  labels     document label -> document word within a window, weighted 1 - alpha

Every pair is one stochastic gradient step on the log-likelihood of the
target under the input vector, factored over the target's coding-tree path.
The learning rate decays linearly from ``initial_learning_rate`` to
``min_learning_rate`` across all pairs of the whole run; a term whose weight
is zero still advances the schedule, so changing alpha does not reshape the
decay.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import UnknownTokenError, ValidationError
from .model import EmbeddingModel, label_token, word_token
from .netio import HeteroNetwork
from .vocab import HuffmanTree, Vocabulary, build_huffman, build_vocab
from .walker import WalkCorpus, generate_walks

_MASK64 = (1 << 64) - 1
_INIT_STREAM = 0x12E7
_SUBSAMPLE_STREAM = 0x535

MAX_SOFTMAX_CANDIDATES = 10000


@dataclass
class TrainConfig:
    dimension: int = 100
    window: int = 5
    iterations: int = 10
    alpha: float = 0.8
    initial_learning_rate: float = 0.025
    min_learning_rate: float = 1e-4
    walks_per_node: int = 10
    walk_length: int = 40
    min_node_count: int = 1
    min_word_count: int = 5
    subsample: float = 0.0
    train_word_context: bool = False
    use_structure: bool = True
    use_content: bool = True
    use_labels: bool = True
    seed: int = 1
    threads: int = 1

    @property
    def deterministic(self) -> bool:
        return self.threads <= 1

    def validate(self):
        if self.dimension < 1:
            raise ValidationError("dimension must be >= 1")
        if self.window < 1:
            raise ValidationError("window must be >= 1")
        if self.iterations < 0:
            raise ValidationError("iterations must be >= 0")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError("alpha must lie in [0, 1]")
        if not 0.0 < self.min_learning_rate <= self.initial_learning_rate:
            raise ValidationError("need 0 < min_learning_rate <= initial_learning_rate")
        if self.walks_per_node < 1 or self.walk_length < 1:
            raise ValidationError("walks_per_node and walk_length must be >= 1")
        if self.min_node_count < 1 or self.min_word_count < 1:
            raise ValidationError("min counts must be >= 1")
        if self.subsample < 0.0:
            raise ValidationError("subsample must be >= 0")
        if self.threads < 1:
            raise ValidationError("threads must be >= 1")
        if not (self.use_structure or self.use_content or self.use_labels
                or self.train_word_context):
            raise ValidationError("all training terms are disabled")


@dataclass
class LrSchedule:
    """Linear decay from ``initial`` to ``minimum`` over ``total`` pairs."""

    initial: float
    minimum: float
    total: int
    processed: int = 0

    @classmethod
    def constant(cls, lr: float) -> "LrSchedule":
        return cls(lr, lr, 1)

    def current(self) -> float:
        lr = self.initial - (self.initial - self.minimum) * (self.processed / self.total)
        return max(lr, self.minimum)


@dataclass
class EpochStats:
    epoch: int
    structure_ll: float
    content_ll: float
    label_ll: float

    def tsv_line(self) -> str:
        return (
            f"{self.epoch}\t{self.structure_ll:.6f}"
            f"\t{self.content_ll:.6f}\t{self.label_ll:.6f}"
        )


@dataclass
class TrainResult:
    model: EmbeddingModel
    epochs: list[EpochStats]
    corpora: list[WalkCorpus] = field(default_factory=list)
    vocabularies: dict[str, Vocabulary] = field(default_factory=dict)


@dataclass
class ObjectiveValue:
    """Exact per-term log-likelihood sums over all pairs of each term."""

    structure: float
    content: float
    label: float
    structure_pairs: int
    content_pairs: int
    label_pairs: int

    def weighted_total(self, alpha: float) -> float:
        total = 0.0
        if self.structure_pairs:
            total += alpha * self.structure
        if self.content_pairs:
            total += (1.0 - alpha) * self.content
        if self.label_pairs:
            total += (1.0 - alpha) * self.label
        return total


def node_tree_kind(source_id: int) -> str:
    return f"nodes:{source_id}"


def init_model(
    network: HeteroNetwork,
    vocabularies: Mapping[str, Vocabulary],
    trees: Mapping[str, HuffmanTree],
    config: TrainConfig,
) -> EmbeddingModel:
    """Allocate vectors: inputs uniform in [-0.5, 0.5) / dimension, inner zeros.

    Token order is node sources ascending, then words, then labels, each in
    vocabulary order, so initialization depends only on seed and vocabulary.
    """
    tokens: list[str] = []
    for k in range(1, network.num_sources + 1):
        vocab = vocabularies.get(node_tree_kind(k))
        if vocab is not None:
            tokens.extend(vocab.tokens)
    for kind in ("words", "labels"):
        vocab = vocabularies.get(kind)
        if vocab is not None:
            tokens.extend(vocab.tokens)
    if not tokens:
        raise ValidationError("nothing to embed: all vocabularies are empty")

    rng = np.random.default_rng(
        np.random.SeedSequence((config.seed & _MASK64, _INIT_STREAM))
    )
    dim = config.dimension
    vectors = (rng.random((len(tokens), dim)) - 0.5) / dim
    inner = {
        kind: np.zeros((tree.inner_count, dim)) for kind, tree in trees.items()
    }
    return EmbeddingModel(
        dimension=dim,
        tokens=tokens,
        vectors=vectors,
        trees=dict(trees),
        inner=inner,
    )


def _clamp(x: float) -> float:
    return max(-kernels.SCORE_CLAMP, min(kernels.SCORE_CLAMP, x))


def _log_sigmoid(y: float) -> float:
    if y >= 0.0:
        return -math.log1p(math.exp(-y))
    return y - math.log1p(math.exp(y))


def _tree_inner(model: EmbeddingModel, tree: HuffmanTree) -> np.ndarray:
    try:
        return model.inner[tree.kind]
    except KeyError:
        raise ValidationError(f"model has no inner vectors for tree {tree.kind!r}") from None


def hs_log_prob(
    model: EmbeddingModel, input_token: str, tree: HuffmanTree, target_token: str
) -> float:
    """Log-probability of a tree leaf given an input token; always <= 0."""
    v = model.vector(input_token)
    try:
        leaf = tree.vocab.index[target_token]
    except KeyError:
        raise UnknownTokenError(target_token) from None
    inner = _tree_inner(model, tree)
    total = 0.0
    for t in range(int(tree.path_lengths[leaf])):
        x = _clamp(float(v @ inner[tree.path_matrix[leaf, t]]))
        total += _log_sigmoid(x if tree.bit_matrix[leaf, t] == 0 else -x)
    return total


def hs_gradient_step(
    model: EmbeddingModel,
    input_token: str,
    tree: HuffmanTree,
    target_token: str,
    learning_rate: float,
    weight: float = 1.0,
) -> None:
    """One in-place gradient ascent step on log P(target | input), scaled by weight.

    A zero weight leaves the model bitwise untouched.
    """
    step = learning_rate * weight
    if step == 0.0:
        return
    try:
        row = model.rows[input_token]
    except KeyError:
        raise UnknownTokenError(input_token) from None
    try:
        leaf = tree.vocab.index[target_token]
    except KeyError:
        raise UnknownTokenError(target_token) from None
    inner = _tree_inner(model, tree)
    work = np.empty(model.dimension)
    kernels._pair_update(
        model.vectors, inner,
        tree.path_matrix, tree.bit_matrix, tree.path_lengths,
        row, leaf, step, work,
    )


def full_softmax_log_prob(
    model: EmbeddingModel,
    input_token: str,
    tree: HuffmanTree,
    candidate_tokens: Sequence[str],
    target_token: str,
) -> float:
    """Exact softmax log-probability over an explicit candidate set.

    Each candidate's output vector is reconstructed as the signed sum of its
    path's inner vectors (bit 0 adds, bit 1 subtracts).  Intended for small
    diagnostic candidate sets, not training.
    """
    if len(candidate_tokens) > MAX_SOFTMAX_CANDIDATES:
        raise ValidationError(
            f"candidate set of {len(candidate_tokens)} exceeds {MAX_SOFTMAX_CANDIDATES}"
        )
    if target_token not in candidate_tokens:
        raise ValidationError("target token must be among the candidates")
    v = model.vector(input_token)
    inner = _tree_inner(model, tree)
    scores = np.empty(len(candidate_tokens))
    target_score = None
    for c, tok in enumerate(candidate_tokens):
        try:
            leaf = tree.vocab.index[tok]
        except KeyError:
            raise UnknownTokenError(tok) from None
        out = np.zeros(model.dimension)
        for t in range(int(tree.path_lengths[leaf])):
            sign = 1.0 if tree.bit_matrix[leaf, t] == 0 else -1.0
            out += sign * inner[tree.path_matrix[leaf, t]]
        scores[c] = float(v @ out)
        if tok == target_token and target_score is None:
            target_score = scores[c]
    m = float(scores.max())
    logsumexp = m + math.log(float(np.exp(scores - m).sum()))
    return float(target_score) - logsumexp


def window_pair_count(length: int, window: int) -> int:
    """Number of ordered in-window pairs over a sequence of the given length."""
    total = 0
    for i in range(length):
        total += min(length - 1, i + window) - max(0, i - window)
    return total


# --- pair stream compilation -------------------------------------------------

@dataclass
class _SkipgramStream:
    tree: HuffmanTree
    rows: np.ndarray
    leaves: np.ndarray
    offsets: np.ndarray
    seq_base: np.ndarray
    pairs: int


@dataclass
class _DocStream:
    tree: HuffmanTree
    word_leaves: np.ndarray
    word_offsets: np.ndarray
    input_rows: np.ndarray
    input_offsets: np.ndarray
    seq_base: np.ndarray
    pairs: int


def _finalize_seq(pair_counts: list[int]) -> tuple[np.ndarray, int]:
    base = np.zeros(len(pair_counts), dtype=np.int64)
    if pair_counts:
        np.cumsum(pair_counts[:-1], out=base[1:])
    return base, int(sum(pair_counts))


def _compile_token_sequences(
    model: EmbeddingModel,
    tree: HuffmanTree,
    sequences: Iterable[list[str]],
    window: int,
) -> _SkipgramStream:
    """Token sequences to flat row/leaf arrays; tokens outside the tree are dropped."""
    rows: list[int] = []
    leaves: list[int] = []
    offsets = [0]
    pair_counts = []
    index = tree.vocab.index
    for seq in sequences:
        n = 0
        for tok in seq:
            leaf = index.get(tok)
            if leaf is None:
                continue
            rows.append(model.rows[tok])
            leaves.append(leaf)
            n += 1
        offsets.append(offsets[-1] + n)
        pair_counts.append(window_pair_count(n, window))
    seq_base, pairs = _finalize_seq(pair_counts)
    return _SkipgramStream(
        tree=tree,
        rows=np.array(rows, dtype=np.int64),
        leaves=np.array(leaves, dtype=np.int64),
        offsets=np.array(offsets, dtype=np.int64),
        seq_base=seq_base,
        pairs=pairs,
    )


def _compile_doc_stream(
    model: EmbeddingModel,
    tree: HuffmanTree,
    docs: Mapping[int, list[str]],
    inputs_by_doc: Mapping[int, list[str]],
    window: int,
) -> _DocStream:
    """Documents plus their input tokens to flat arrays; empty docs contribute nothing."""
    word_leaves: list[int] = []
    word_offsets = [0]
    input_rows: list[int] = []
    input_offsets = [0]
    pair_counts = []
    index = tree.vocab.index
    for idx, words in docs.items():
        inputs = [model.rows[tok] for tok in inputs_by_doc.get(idx, []) if tok in model.rows]
        if not inputs or not words:
            continue
        leaves = [index[tok] for tok in words]
        word_leaves.extend(leaves)
        word_offsets.append(word_offsets[-1] + len(leaves))
        input_rows.extend(inputs)
        input_offsets.append(input_offsets[-1] + len(inputs))
        pair_counts.append(window_pair_count(len(leaves), window) * len(inputs))
    seq_base, pairs = _finalize_seq(pair_counts)
    return _DocStream(
        tree=tree,
        word_leaves=np.array(word_leaves, dtype=np.int64),
        word_offsets=np.array(word_offsets, dtype=np.int64),
        input_rows=np.array(input_rows, dtype=np.int64),
        input_offsets=np.array(input_offsets, dtype=np.int64),
        seq_base=seq_base,
        pairs=pairs,
    )


def _filtered_documents(
    network: HeteroNetwork, word_vocab: Vocabulary, config: TrainConfig
) -> dict[int, list[str]]:
    """Per-document word tokens kept after vocabulary and subsample filtering."""
    rng = np.random.default_rng(
        np.random.SeedSequence((config.seed & _MASK64, _SUBSAMPLE_STREAM))
    )
    total = word_vocab.total_count
    out: dict[int, list[str]] = {}
    for idx, words in network.documents.items():
        kept = []
        for w in words:
            tok = word_token(w)
            i = word_vocab.index.get(tok)
            if i is None:
                continue
            if config.subsample > 0.0:
                ratio = config.subsample * total / float(word_vocab.frequencies[i])
                keep = math.sqrt(ratio) + ratio
                if keep < 1.0 and rng.random() > keep:
                    continue
            kept.append(tok)
        out[idx] = kept
    return out


def _word_tree(model: EmbeddingModel) -> HuffmanTree:
    tree = model.trees.get("words")
    if tree is None:
        raise ValidationError("model has no word coding tree")
    return tree


def _as_schedule(lr) -> LrSchedule:
    if isinstance(lr, LrSchedule):
        return lr
    return LrSchedule.constant(float(lr))


def _num_threads(config: TrainConfig) -> int:
    import numba

    return max(1, min(config.threads, numba.config.NUMBA_NUM_THREADS))


def _run_skipgram(model, stream: _SkipgramStream, config, sched: LrSchedule, weight):
    if stream.pairs == 0:
        return math.nan, 0
    if weight == 0.0:
        sched.processed += stream.pairs
        return math.nan, stream.pairs
    tree = stream.tree
    inner = _tree_inner(model, tree)
    args = (
        model.vectors, inner,
        tree.path_matrix, tree.bit_matrix, tree.path_lengths,
        stream.rows, stream.leaves, stream.offsets,
    )
    tail = (config.window, weight, sched.initial, sched.minimum,
            sched.processed, sched.total)
    if config.threads > 1:
        import numba

        numba.set_num_threads(_num_threads(config))
        ll, n = kernels.skipgram_pass_parallel(*args, stream.seq_base, *tail)
    else:
        ll, n = kernels.skipgram_pass_serial(*args, *tail)
    sched.processed += n
    return float(ll), int(n)


def _run_doc(model, stream: _DocStream, config, sched: LrSchedule, weight):
    if stream.pairs == 0:
        return math.nan, 0
    if weight == 0.0:
        sched.processed += stream.pairs
        return math.nan, stream.pairs
    tree = stream.tree
    inner = _tree_inner(model, tree)
    args = (
        model.vectors, inner,
        tree.path_matrix, tree.bit_matrix, tree.path_lengths,
        stream.word_leaves, stream.word_offsets,
        stream.input_rows, stream.input_offsets,
    )
    tail = (config.window, weight, sched.initial, sched.minimum,
            sched.processed, sched.total)
    if config.threads > 1:
        import numba

        numba.set_num_threads(_num_threads(config))
        ll, n = kernels.doc_pass_parallel(*args, stream.seq_base, *tail)
    else:
        ll, n = kernels.doc_pass_serial(*args, *tail)
    sched.processed += n
    return float(ll), int(n)


# --- public passes ------------------------------------------------------------

def structure_pass(model: EmbeddingModel, corpus: WalkCorpus, config: TrainConfig, lr):
    """One pass of walk skip-gram pairs for one source, weighted by alpha.

    ``lr`` is either a fixed rate or a shared LrSchedule advanced per pair.
    Returns (log-likelihood sum, pair count); the sum is nan when nothing was
    trained (zero weight or empty stream).
    """
    kind = node_tree_kind(corpus.source_id)
    tree = model.trees.get(kind)
    if tree is None:
        raise ValidationError(f"model has no coding tree for source {corpus.source_id}")
    stream = _compile_token_sequences(
        model, tree, ([ref.render() for ref in walk] for walk in corpus.walks),
        config.window,
    )
    return _run_skipgram(model, stream, config, _as_schedule(lr), config.alpha)


def _content_inputs(network: HeteroNetwork) -> dict[int, list[str]]:
    return {idx: [ref.render() for ref in refs] for idx, refs in network.links.items()}


def _label_inputs(network: HeteroNetwork) -> dict[int, list[str]]:
    return {idx: [label_token(lab)] for idx, lab in network.labels.items()}


def content_pass(model: EmbeddingModel, network: HeteroNetwork, config: TrainConfig, lr):
    """One pass of (linked node -> document word) pairs, weighted by 1 - alpha."""
    tree = _word_tree(model)
    docs = _filtered_documents(network, tree.vocab, config)
    stream = _compile_doc_stream(model, tree, docs, _content_inputs(network), config.window)
    return _run_doc(model, stream, config, _as_schedule(lr), 1.0 - config.alpha)


def label_pass(model: EmbeddingModel, network: HeteroNetwork, config: TrainConfig, lr):
    """One pass of (label -> document word) pairs, weighted by 1 - alpha.

    Documents without labels are skipped; with no labels at all this is a no-op.
    """
    if not network.labels:
        return math.nan, 0
    tree = _word_tree(model)
    docs = _filtered_documents(network, tree.vocab, config)
    labeled = {idx: docs[idx] for idx in network.labels if idx in docs}
    stream = _compile_doc_stream(model, tree, labeled, _label_inputs(network), config.window)
    return _run_doc(model, stream, config, _as_schedule(lr), 1.0 - config.alpha)


def word_context_pass(model: EmbeddingModel, network: HeteroNetwork, config: TrainConfig, lr):
    """Optional word -> word skip-gram over documents, weighted by 1 - alpha.

    Off by default; without it word input vectors keep their initialization.
    """
    tree = _word_tree(model)
    docs = _filtered_documents(network, tree.vocab, config)
    stream = _compile_token_sequences(model, tree, docs.values(), config.window)
    return _run_skipgram(model, stream, config, _as_schedule(lr), 1.0 - config.alpha)


# --- full training ------------------------------------------------------------

def _mean(ll_sum: float, pairs: int) -> float:
    if pairs == 0 or math.isnan(ll_sum):
        return math.nan
    return ll_sum / pairs


def build_vocabularies(
    network: HeteroNetwork,
    corpora: Sequence[WalkCorpus],
    config: TrainConfig,
) -> tuple[dict[str, Vocabulary], dict[str, HuffmanTree]]:
    """Vocabularies and coding trees for every term the config enables.

    Node frequencies come from the walk corpus (or one per declared node when
    structure is off, in which case nodes get vectors but no tree).  Labels
    get vectors only; they are never prediction targets.
    """
    vocabs: dict[str, Vocabulary] = {}
    trees: dict[str, HuffmanTree] = {}
    by_source = {c.source_id: c for c in corpora}
    for k in range(1, network.num_sources + 1):
        if not network.nodes[k]:
            continue
        kind = node_tree_kind(k)
        if config.use_structure:
            corpus = by_source.get(k)
            if corpus is None:
                raise ValidationError(f"no walk corpus for source {k}")
            stream = (ref.render() for walk in corpus.walks for ref in walk)
            vocabs[kind] = build_vocab(stream, kind, config.min_node_count)
            trees[kind] = build_huffman(vocabs[kind])
        else:
            stream = (ref.render() for ref in network.node_refs(k))
            vocabs[kind] = build_vocab(stream, kind, 1)

    wants_words = config.use_content or config.use_labels or config.train_word_context
    if wants_words and network.documents:
        stream = (word_token(w) for words in network.documents.values() for w in words)
        vocabs["words"] = build_vocab(stream, "words", config.min_word_count)
        trees["words"] = build_huffman(vocabs["words"])

    if config.use_labels and network.labels:
        stream = (label_token(lab) for lab in network.labels.values())
        vocabs["labels"] = build_vocab(stream, "labels", 1)
    return vocabs, trees


def train(
    network: HeteroNetwork,
    config: TrainConfig,
    progress: Callable[[EpochStats], None] | None = None,
) -> TrainResult:
    """Run the full pipeline: walks, vocabularies, trees, then epoch passes.

    Each epoch trains structure pairs for every source in ascending order,
    then content pairs, then (when enabled) word context pairs, then label
    pairs.  With threads == 1 the result depends only on the corpus files and
    the config.
    """
    config.validate()
    corpora: list[WalkCorpus] = []
    if config.use_structure:
        for k in range(1, network.num_sources + 1):
            if network.nodes[k]:
                corpora.append(
                    generate_walks(
                        network, k, config.walks_per_node, config.walk_length, config.seed
                    )
                )
    vocabs, trees = build_vocabularies(network, corpora, config)
    model = init_model(network, vocabs, trees, config)

    word_tree = model.trees.get("words")
    walk_streams = []
    if config.use_structure:
        for corpus in corpora:
            tree = model.trees[node_tree_kind(corpus.source_id)]
            walk_streams.append(
                _compile_token_sequences(
                    model, tree,
                    ([ref.render() for ref in walk] for walk in corpus.walks),
                    config.window,
                )
            )

    content_stream = label_stream = wordctx_stream = None
    if word_tree is not None:
        docs = _filtered_documents(network, word_tree.vocab, config)
        if config.use_content:
            content_stream = _compile_doc_stream(
                model, word_tree, docs, _content_inputs(network), config.window
            )
        if config.use_labels and network.labels:
            labeled = {idx: docs[idx] for idx in network.labels if idx in docs}
            label_stream = _compile_doc_stream(
                model, word_tree, labeled, _label_inputs(network), config.window
            )
        if config.train_word_context:
            wordctx_stream = _compile_token_sequences(
                model, word_tree, docs.values(), config.window
            )

    per_epoch = sum(s.pairs for s in walk_streams)
    for stream in (content_stream, label_stream, wordctx_stream):
        if stream is not None:
            per_epoch += stream.pairs
    sched = LrSchedule(
        config.initial_learning_rate,
        config.min_learning_rate,
        max(per_epoch * config.iterations, 1),
    )

    epochs: list[EpochStats] = []
    for epoch in range(config.iterations):
        s_ll, s_pairs = 0.0, 0
        for stream in walk_streams:
            ll, n = _run_skipgram(model, stream, config, sched, config.alpha)
            if not math.isnan(ll):
                s_ll += ll
                s_pairs += n
        c_ll, c_pairs = 0.0, 0
        if content_stream is not None:
            ll, n = _run_doc(model, content_stream, config, sched, 1.0 - config.alpha)
            if not math.isnan(ll):
                c_ll += ll
                c_pairs += n
        if wordctx_stream is not None:
            ll, n = _run_skipgram(model, wordctx_stream, config, sched, 1.0 - config.alpha)
            if not math.isnan(ll):
                c_ll += ll
                c_pairs += n
        l_ll, l_pairs = 0.0, 0
        if label_stream is not None:
            ll, n = _run_doc(model, label_stream, config, sched, 1.0 - config.alpha)
            if not math.isnan(ll):
                l_ll += ll
                l_pairs += n
        stats = EpochStats(
            epoch=epoch,
            structure_ll=_mean(s_ll, s_pairs),
            content_ll=_mean(c_ll, c_pairs),
            label_ll=_mean(l_ll, l_pairs),
        )
        epochs.append(stats)
        if progress is not None:
            progress(stats)

    return TrainResult(model=model, epochs=epochs, corpora=corpora, vocabularies=vocabs)


def exact_objective(
    model: EmbeddingModel,
    corpora: Sequence[WalkCorpus],
    network: HeteroNetwork,
    config: TrainConfig,
) -> ObjectiveValue:
    """Evaluate each term's log-likelihood sum exactly, without training.

    Walks documents and labels the same way the pass machinery does (words
    outside the vocabulary are dropped before windowing); subsampling is
    ignored so the value is deterministic in the model alone.  Intended for
    small diagnostic corpora.
    """
    b = config.window
    structure = 0.0
    s_pairs = 0
    if config.use_structure:
        for corpus in corpora:
            tree = model.trees.get(node_tree_kind(corpus.source_id))
            if tree is None:
                raise ValidationError(
                    f"model has no coding tree for source {corpus.source_id}"
                )
            for walk in corpus.walks:
                toks = [ref.render() for ref in walk if ref.render() in tree.vocab]
                for i, tok in enumerate(toks):
                    for j in range(max(0, i - b), min(len(toks) - 1, i + b) + 1):
                        if j == i:
                            continue
                        structure += hs_log_prob(model, tok, tree, toks[j])
                        s_pairs += 1

    content = 0.0
    c_pairs = 0
    label = 0.0
    l_pairs = 0
    word_tree = model.trees.get("words")
    if word_tree is not None:
        kept_docs = {
            idx: [word_token(w) for w in words if word_token(w) in word_tree.vocab]
            for idx, words in network.documents.items()
        }

        def doc_term(docs, inputs_by_doc):
            total, pairs = 0.0, 0
            for idx, toks in docs.items():
                inputs = [t for t in inputs_by_doc.get(idx, []) if t in model.rows]
                if not inputs or not toks:
                    continue
                for i in range(len(toks)):
                    for j in range(max(0, i - b), min(len(toks) - 1, i + b) + 1):
                        if j == i:
                            continue
                        for tok in inputs:
                            total += hs_log_prob(model, tok, word_tree, toks[j])
                            pairs += 1
            return total, pairs

        if config.use_content:
            content, c_pairs = doc_term(kept_docs, _content_inputs(network))
        if config.train_word_context:
            for toks in kept_docs.values():
                for i, tok in enumerate(toks):
                    for j in range(max(0, i - b), min(len(toks) - 1, i + b) + 1):
                        if j == i:
                            continue
                        content += hs_log_prob(model, tok, word_tree, toks[j])
                        c_pairs += 1
        if config.use_labels and network.labels:
            labeled = {idx: kept_docs[idx] for idx in network.labels if idx in kept_docs}
            label, l_pairs = doc_term(labeled, _label_inputs(network))

    return ObjectiveValue(
        structure=structure,
        content=content,
        label=label,
        structure_pairs=s_pairs,
        content_pairs=c_pairs,
        label_pairs=l_pairs,
    )
