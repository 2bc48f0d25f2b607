"""One vector space for the nodes, words, and labels of a multi-source network."""

from .errors import ParseError, UnknownTokenError, UnraError, ValidationError
from .evaluation import EvalReport, evaluate, f1_scores, fit_linear_ovr, split_labels
from .model import EmbeddingModel, export_text, load_model, save_model
from .netio import HeteroNetwork, NodeRef, load_network, save_network, validate
from .query import QueryResult, cosine, most_similar
from .synth import SynthConfig, generate
from .trainer import (
    EpochStats,
    LrSchedule,
    ObjectiveValue,
    TrainConfig,
    TrainResult,
    content_pass,
    exact_objective,
    full_softmax_log_prob,
    hs_gradient_step,
    hs_log_prob,
    init_model,
    label_pass,
    structure_pass,
    train,
    word_context_pass,
)
from .vocab import HuffmanTree, Vocabulary, build_huffman, build_vocab, leaf_path
from .walker import WalkCorpus, corpus_node_frequencies, generate_walks

__version__ = "0.1.0"

__all__ = [
    "EmbeddingModel",
    "EpochStats",
    "EvalReport",
    "HeteroNetwork",
    "HuffmanTree",
    "LrSchedule",
    "NodeRef",
    "ObjectiveValue",
    "ParseError",
    "QueryResult",
    "SynthConfig",
    "TrainConfig",
    "TrainResult",
    "UnknownTokenError",
    "UnraError",
    "ValidationError",
    "Vocabulary",
    "WalkCorpus",
    "build_huffman",
    "build_vocab",
    "content_pass",
    "corpus_node_frequencies",
    "cosine",
    "evaluate",
    "exact_objective",
    "export_text",
    "f1_scores",
    "fit_linear_ovr",
    "full_softmax_log_prob",
    "generate",
    "generate_walks",
    "hs_gradient_step",
    "hs_log_prob",
    "init_model",
    "label_pass",
    "leaf_path",
    "load_model",
    "load_network",
    "most_similar",
    "save_model",
    "save_network",
    "split_labels",
    "structure_pass",
    "train",
    "validate",
    "word_context_pass",
]
