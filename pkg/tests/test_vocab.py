from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unra.errors import UnknownTokenError, ValidationError
from unra.vocab import (
    HuffmanTree,
    build_huffman,
    build_vocab,
    expected_code_length,
    leaf_path,
    write_vocab_dump,
)


@lru_cache(maxsize=None)
def depth_profiles(n):
    """All distinct sorted leaf-depth profiles of full binary trees with n leaves."""
    if n == 1:
        return {(0,)}
    out = set()
    for k in range(1, n):
        for left in depth_profiles(k):
            for right in depth_profiles(n - k):
                out.add(tuple(sorted([d + 1 for d in left] + [d + 1 for d in right])))
    return out


def optimal_weighted_length(freqs):
    """Exhaustive minimum of sum(freq * depth) over all full binary trees.

    For any fixed depth profile the best assignment pairs the largest
    frequency with the smallest depth, so scanning profiles suffices.
    """
    ordered = sorted(freqs, reverse=True)
    best = None
    for profile in depth_profiles(len(freqs)):
        cost = sum(f * d for f, d in zip(ordered, sorted(profile)))
        if best is None or cost < best:
            best = cost
    return best


class TestBuildVocab:
    def test_ordering_by_frequency_then_token(self):
        v = build_vocab(["b", "a", "b", "c", "a", "d"], "words")
        assert v.tokens == ["a", "b", "c", "d"]
        assert list(v.frequencies) == [2, 2, 1, 1]
        assert v.total_count == 6

    def test_min_count_filters(self):
        v = build_vocab(["a"] * 5 + ["b"] * 2, "words", min_count=5)
        assert v.tokens == ["a"]

    def test_empty_result_is_an_error(self):
        with pytest.raises(ValidationError):
            build_vocab(["a", "b"], "words", min_count=3)
        with pytest.raises(ValidationError):
            build_vocab([], "words")

    def test_index_is_inverse_of_tokens(self):
        v = build_vocab(["x", "y", "x"], "nodes:1")
        assert all(v.tokens[v.index[t]] == t for t in v.tokens)

    @given(st.lists(st.sampled_from("abcdef"), min_size=1, max_size=40))
    def test_frequencies_match_counts(self, stream):
        v = build_vocab(stream, "words")
        for tok, freq in zip(v.tokens, v.frequencies):
            assert stream.count(tok) == freq


class TestHuffman:
    def test_two_leaves(self):
        tree = build_huffman(build_vocab(["a", "a", "b"], "words"))
        assert tree.inner_count == 1
        assert list(tree.path_lengths) == [1, 1]
        # both paths visit the root (vertex 0 of a 2-leaf tree), opposite bits
        assert tree.path_matrix[0, 0] == tree.path_matrix[1, 0] == 0
        assert {int(tree.bit_matrix[0, 0]), int(tree.bit_matrix[1, 0])} == {0, 1}

    def test_single_leaf_has_empty_code(self):
        tree = build_huffman(build_vocab(["only"], "words"))
        assert tree.inner_count == 0
        assert tree.max_depth == 0
        path, bits = leaf_path(tree, "only")
        assert len(path) == 0 and len(bits) == 0

    def test_four_equal_leaves_all_depth_two(self):
        tree = build_huffman(build_vocab(list("abcd"), "words"))
        assert list(tree.path_lengths) == [2, 2, 2, 2]

    def test_root_is_last_created_inner_vertex(self):
        tree = build_huffman(build_vocab(list("aabbbcccc"), "words"))
        n = tree.leaf_count
        assert all(tree.path_matrix[i, 0] == n - 2 for i in range(n))

    def test_skewed_frequencies_give_skewed_depths(self):
        v = build_vocab(["a"] * 100 + ["b"] * 10 + ["c"] * 2 + ["d"], "words")
        tree = build_huffman(v)
        assert tree.path_lengths[0] == 1  # most frequent sits closest to the root
        assert tree.path_lengths[0] <= tree.path_lengths[1] <= tree.path_lengths[3]

    def test_deterministic_across_runs(self):
        stream = list("abacabadabra")
        t1 = build_huffman(build_vocab(stream, "words"))
        t2 = build_huffman(build_vocab(stream, "words"))
        np.testing.assert_array_equal(t1.path_matrix, t2.path_matrix)
        np.testing.assert_array_equal(t1.bit_matrix, t2.bit_matrix)

    def test_unknown_token_error(self):
        tree = build_huffman(build_vocab(["a", "b"], "words"))
        with pytest.raises(UnknownTokenError):
            leaf_path(tree, "zzz")

    @staticmethod
    def codes_of(tree: HuffmanTree):
        return ["".join(map(str, tree.code(i))) for i in range(tree.leaf_count)]

    @given(st.lists(st.integers(min_value=1, max_value=50), min_size=2, max_size=10))
    @settings(max_examples=60)
    def test_prefix_free(self, freqs):
        stream = [f"t{i}" for i, f in enumerate(freqs) for _ in range(f)]
        tree = build_huffman(build_vocab(stream, "words"))
        codes = self.codes_of(tree)
        for i, ci in enumerate(codes):
            for j, cj in enumerate(codes):
                if i != j:
                    assert not cj.startswith(ci)

    @given(st.lists(st.integers(min_value=1, max_value=100), min_size=2, max_size=7))
    @settings(max_examples=40)
    def test_optimality_small(self, freqs):
        stream = [f"t{i}" for i, f in enumerate(freqs) for _ in range(f)]
        vocab = build_vocab(stream, "words")
        tree = build_huffman(vocab)
        achieved = int((vocab.frequencies * tree.path_lengths).sum())
        assert achieved == optimal_weighted_length(list(vocab.frequencies))

    def test_expected_code_length(self):
        vocab = build_vocab(list("aab"), "words")
        tree = build_huffman(vocab)
        assert expected_code_length(tree) == pytest.approx(1.0)


class TestVocabDump:
    def test_dump_format(self, tmp_path):
        vocab = build_vocab(["a", "a", "b"], "words")
        tree = build_huffman(vocab)
        path = tmp_path / "v.tsv"
        write_vocab_dump(path, [vocab], {"words": tree})
        lines = path.read_text().splitlines()
        assert lines[0] == "token\tfrequency\tcode"
        assert len(lines) == 3
        tok, freq, code = lines[1].split("\t")
        assert (tok, freq) == ("a", "2")
        assert code in ("0", "1")

    def test_dump_without_tree_leaves_code_empty(self, tmp_path):
        vocab = build_vocab(["c:L1", "c:L2"], "labels")
        path = tmp_path / "v.tsv"
        write_vocab_dump(path, [vocab], {})
        for line in path.read_text().splitlines()[1:]:
            assert line.endswith("\t")
