import math

import numpy as np
import pytest

from unra.errors import UnknownTokenError, ValidationError
from unra.model import EmbeddingModel
from unra.query import QueryResult, cosine, most_similar


def make_model(tokens, vectors):
    arr = np.asarray(vectors, dtype=np.float64)
    return EmbeddingModel(
        dimension=arr.shape[1], tokens=list(tokens), vectors=arr, trees={}, inner={}
    )


def random_model(rng, n=12, dim=5):
    tokens = (
        [f"1:p{i}" for i in range(n // 3)]
        + [f"2:a{i}" for i in range(n // 3)]
        + [f"w:t{i}" for i in range(n - 2 * (n // 3) - 1)]
        + ["c:lab"]
    )
    return make_model(tokens, rng.normal(size=(len(tokens), dim)))


def brute_force(model, query_tokens, top_k, allowed=None):
    q = np.mean([model.vector(t) for t in query_tokens], axis=0)
    scored = []
    for tok in model.tokens:
        if tok in set(query_tokens):
            continue
        if allowed is not None and not allowed(tok):
            continue
        v = model.vector(tok)
        scored.append((cosine(v, q), tok))
    scored.sort(key=lambda it: (-it[0], it[1]))
    return [(tok, s) for s, tok in scored[:top_k]]


class TestCosine:
    def test_identities(self):
        a = np.array([1.0, 0.0])
        assert cosine(a, np.array([3.0, 0.0])) == pytest.approx(1.0)
        assert cosine(a, np.array([0.0, 2.0])) == pytest.approx(0.0)
        assert cosine(a, np.array([-5.0, 0.0])) == pytest.approx(-1.0)
        assert cosine(a, np.array([1.0, 1.0])) == pytest.approx(math.sqrt(2) / 2)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError):
            cosine(np.zeros(3), np.ones(3))
        with pytest.raises(ValidationError):
            cosine(np.ones(3), np.zeros(3))

    def test_scale_invariance(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=3), rng.normal(size=3)
        assert cosine(a, b) == pytest.approx(cosine(10 * a, 0.3 * b))


class TestMostSimilar:
    def test_matches_brute_force_ranking(self):
        rng = np.random.default_rng(1)
        for trial in range(10):
            model = random_model(rng)
            query = [model.tokens[int(rng.integers(len(model.tokens)))]]
            got = most_similar(model, query, top_k=5)
            want = brute_force(model, query, 5)
            assert [t for t, _ in got.results] == [t for t, _ in want]
            for (_, gs), (_, ws) in zip(got.results, want):
                assert gs == pytest.approx(ws, abs=1e-12)

    def test_query_tokens_never_returned(self):
        rng = np.random.default_rng(2)
        model = random_model(rng)
        res = most_similar(model, ["1:p0", "2:a1"], top_k=len(model.tokens))
        returned = {t for t, _ in res.results}
        assert "1:p0" not in returned and "2:a1" not in returned
        assert len(res.results) == len(model.tokens) - 2

    def test_multi_token_query_uses_mean(self):
        model = make_model(
            ["1:a", "1:b", "1:c", "1:d"],
            [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [-1.0, -1.0]],
        )
        res = most_similar(model, ["1:a", "1:b"], top_k=1)
        # mean of a and b points along (1,1): c is the perfect match
        assert res.results[0][0] == "1:c"
        assert res.results[0][1] == pytest.approx(1.0)

    def test_source_filter_restricts_candidates(self):
        rng = np.random.default_rng(3)
        model = random_model(rng)
        res = most_similar(model, ["1:p0"], top_k=20, source_filter=[2])
        assert res.results and all(t.startswith("2:") for t, _ in res.results)

        res = most_similar(model, ["1:p0"], top_k=20, source_filter=["words"])
        assert res.results and all(t.startswith("w:") for t, _ in res.results)

        res = most_similar(model, ["1:p0"], top_k=20, source_filter=[1, "labels"])
        kinds = {t.split(":")[0] for t, _ in res.results}
        assert kinds <= {"1", "c"} and "c" in kinds

    def test_filter_matches_brute_force(self):
        rng = np.random.default_rng(4)
        model = random_model(rng)
        got = most_similar(model, ["w:t0"], top_k=4, source_filter=[1, 2])
        want = brute_force(
            model, ["w:t0"], 4, allowed=lambda t: t.startswith(("1:", "2:"))
        )
        assert [t for t, _ in got.results] == [t for t, _ in want]
        for (_, gs), (_, ws) in zip(got.results, want):
            assert gs == pytest.approx(ws, abs=1e-12)

    def test_deterministic_tie_break_is_lexicographic(self):
        model = make_model(
            ["1:q", "1:b", "1:a", "1:c"],
            [[1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [0.5, 0.0]],
        )
        res = most_similar(model, ["1:q"], top_k=3)
        assert [t for t, _ in res.results] == ["1:a", "1:b", "1:c"]

    def test_top_k_clamps_to_available(self):
        rng = np.random.default_rng(5)
        model = random_model(rng)
        res = most_similar(model, ["1:p0"], top_k=10_000)
        assert len(res.results) == len(model.tokens) - 1

    def test_zero_norm_candidates_skipped(self):
        model = make_model(
            ["1:a", "1:b", "1:dead"],
            [[1.0, 0.0], [0.5, 0.5], [0.0, 0.0]],
        )
        res = most_similar(model, ["1:a"], top_k=5)
        assert [t for t, _ in res.results] == ["1:b"]

    @pytest.mark.parametrize(
        "kw,err",
        [
            (dict(query_tokens=[], top_k=3), ValidationError),
            (dict(query_tokens=["1:a"], top_k=0), ValidationError),
            (dict(query_tokens=["1:nope"], top_k=3), UnknownTokenError),
        ],
    )
    def test_bad_arguments(self, kw, err):
        model = make_model(["1:a", "1:b"], [[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(err):
            most_similar(model, **kw)

    def test_zero_mean_query_rejected(self):
        model = make_model(
            ["1:a", "1:b", "1:c"],
            [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]],
        )
        with pytest.raises(ValidationError):
            most_similar(model, ["1:a", "1:b"], top_k=1)

    def test_everything_filtered_rejected(self):
        model = make_model(["1:a", "1:b"], [[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(ValidationError):
            most_similar(model, ["1:a"], top_k=1, source_filter=[9])


class TestQueryResult:
    def test_tsv_lines_format(self):
        res = QueryResult(
            query_tokens=["1:a"],
            results=[("1:b", 0.987654321), ("2:c", -0.25)],
        )
        assert res.tsv_lines() == ["1\t1:b\t0.987654", "2\t2:c\t-0.250000"]
