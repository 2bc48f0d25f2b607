"""The learned embedding table and its on-disk formats.

Every embedded entity lives in one token namespace: node tokens render as
``<source>:<id>``, word tokens as ``w:<word>``, label tokens as ``c:<label>``.
The binary model file is lossless::

    magic "UNRA1" | u32 token count | u32 dimension |
    per token: u32 utf-8 byte length | token bytes | dimension f64 components

integers and floats little-endian.  The text export (one ``%.6f`` row per
token under a ``<count> <dim>`` header) is for interoperability and loses
precision.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, UnknownTokenError, ValidationError
from .vocab import HuffmanTree

_MAGIC = b"UNRA1"

WORD_PREFIX = "w:"
LABEL_PREFIX = "c:"


def word_token(word: str) -> str:
    return WORD_PREFIX + word


def label_token(label: str) -> str:
    return LABEL_PREFIX + label


def token_namespace(token: str):
    """Classify a token: ("word",), ("label",), or ("node", source_id)."""
    head, sep, _ = token.partition(":")
    if not sep:
        raise ValidationError(f"token {token!r} has no namespace prefix")
    if head == "w":
        return ("word",)
    if head == "c":
        return ("label",)
    try:
        return ("node", int(head))
    except ValueError:
        raise ValidationError(f"bad token namespace {head!r}") from None


@dataclass
class EmbeddingModel:
    """Input vectors for all tokens plus, while training, per-tree inner vectors.

    ``vectors[rows[token]]`` is the token's input vector.  ``trees`` and
    ``inner`` hold the coding trees and their inner-vertex vectors; they are
    training state and are not serialized.
    """

    dimension: int
    tokens: list[str]
    vectors: np.ndarray
    trees: dict[str, HuffmanTree] = field(default_factory=dict)
    inner: dict[str, np.ndarray] = field(default_factory=dict)
    rows: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.rows = {tok: i for i, tok in enumerate(self.tokens)}
        if len(self.rows) != len(self.tokens):
            raise ValidationError("duplicate tokens in model")
        if self.vectors.shape != (len(self.tokens), self.dimension):
            raise ValidationError(
                f"vector table shape {self.vectors.shape} does not match "
                f"{len(self.tokens)} tokens x {self.dimension}"
            )

    def __contains__(self, token: str) -> bool:
        return token in self.rows

    def __len__(self) -> int:
        return len(self.tokens)

    def vector(self, token: str) -> np.ndarray:
        try:
            return self.vectors[self.rows[token]]
        except KeyError:
            raise UnknownTokenError(token) from None


def save_model(model: EmbeddingModel, path: str | Path):
    """Write the lossless binary model file."""
    if not np.all(np.isfinite(model.vectors)):
        raise ValidationError("model contains non-finite components; refusing to save")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", len(model.tokens), model.dimension))
        for i, tok in enumerate(model.tokens):
            raw = tok.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)
            fh.write(model.vectors[i].astype("<f8", copy=False).tobytes())


def _load_binary(path: Path) -> EmbeddingModel:
    data = path.read_bytes()
    if len(data) < len(_MAGIC) + 8:
        raise ParseError(path, 0, "truncated model file")
    off = len(_MAGIC)
    count, dim = struct.unpack_from("<II", data, off)
    off += 8
    tokens = []
    vectors = np.empty((count, dim), dtype=np.float64)
    for i in range(count):
        if off + 4 > len(data):
            raise ParseError(path, 0, f"truncated token record {i}")
        (tlen,) = struct.unpack_from("<I", data, off)
        off += 4
        if off + tlen + 8 * dim > len(data):
            raise ParseError(path, 0, f"truncated token record {i}")
        tokens.append(data[off : off + tlen].decode("utf-8"))
        off += tlen
        vectors[i] = np.frombuffer(data, dtype="<f8", count=dim, offset=off)
        off += 8 * dim
    if off != len(data):
        raise ParseError(path, 0, f"{len(data) - off} trailing bytes after last record")
    return EmbeddingModel(dimension=dim, tokens=tokens, vectors=vectors)


def _load_text(path: Path) -> EmbeddingModel:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ParseError(path, 1, "expected '<count> <dimension>' header")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise ParseError(path, 1, "expected '<count> <dimension>' header") from None
        tokens = []
        vectors = np.empty((count, dim), dtype=np.float64)
        lineno = 1
        for i in range(count):
            line = fh.readline()
            lineno += 1
            parts = line.split()
            if len(parts) != dim + 1:
                raise ParseError(path, lineno, f"expected token and {dim} components")
            tokens.append(parts[0])
            try:
                vectors[i] = [float(x) for x in parts[1:]]
            except ValueError:
                raise ParseError(path, lineno, "bad float component") from None
        if fh.readline().strip():
            raise ParseError(path, lineno + 1, "trailing content after last row")
    return EmbeddingModel(dimension=dim, tokens=tokens, vectors=vectors)


def load_model(path: str | Path) -> EmbeddingModel:
    """Load a model file, detecting binary vs text format by its magic bytes."""
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(_MAGIC))
    if head == _MAGIC:
        return _load_binary(path)
    return _load_text(path)


def export_text(model: EmbeddingModel, path: str | Path):
    """Write the lossy text export; round-trips tokens exactly, floats to 6 places."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(model.tokens)} {model.dimension}\n")
        for i, tok in enumerate(model.tokens):
            comps = " ".join(f"{x:.6f}" for x in model.vectors[i])
            fh.write(f"{tok} {comps}\n")
