import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capstream.core import (
    EmbeddingVec,
    LossBreakdown,
    Sample,
    TaskSplit,
    TaskStream,
    cosine_similarity,
    normalize,
)
from capstream.errors import DataError, DegenerateVectorError


def vec(*xs):
    return np.asarray(xs, dtype=np.float64)


class TestNormalize:
    def test_three_four_five(self):
        out = normalize(vec(3, 4))
        np.testing.assert_allclose(out.values, [0.6, 0.8], atol=1e-12)
        assert out.normalized

    def test_already_unit(self):
        out = normalize(vec(1, 0, 0))
        np.testing.assert_allclose(out.values, [1, 0, 0], atol=1e-12)

    def test_zero_norm_raises(self):
        with pytest.raises(DegenerateVectorError):
            normalize(vec(0, 0))

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=16))
    def test_idempotent(self, xs):
        v = np.asarray(xs)
        if np.linalg.norm(v) <= 1e-9:
            return
        once = normalize(v).values
        twice = normalize(once).values
        np.testing.assert_allclose(twice, once, atol=1e-7)


class TestCosineSimilarity:
    def test_identical_direction(self):
        assert cosine_similarity(vec(1, 0), vec(1, 0)) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert cosine_similarity(vec(1, 0), vec(0, 1)) == pytest.approx(0.0)

    def test_analytic_45_degrees(self):
        assert cosine_similarity(vec(1, 1), vec(1, 0)) == pytest.approx(0.70710678, abs=1e-8)

    def test_dimension_mismatch(self):
        with pytest.raises(DataError):
            cosine_similarity(vec(1, 0), vec(1, 0, 0))

    def test_zero_vector(self):
        with pytest.raises(DegenerateVectorError):
            cosine_similarity(vec(0, 0), vec(1, 0))

    def test_accepts_embedding_vec(self):
        u = EmbeddingVec(vec(0.6, 0.8), normalized=True)
        assert cosine_similarity(u, vec(3, 4)) == pytest.approx(1.0)

    @settings(max_examples=200)
    @given(
        st.lists(st.floats(-100, 100), min_size=2, max_size=8),
        st.lists(st.floats(-100, 100), min_size=2, max_size=8),
        st.floats(0.01, 50.0),
    )
    def test_bounds_symmetry_scale(self, xs, ys, alpha):
        n = min(len(xs), len(ys))
        u, v = np.asarray(xs[:n]), np.asarray(ys[:n])
        if np.linalg.norm(u) < 1e-6 or np.linalg.norm(v) < 1e-6:
            return
        c = cosine_similarity(u, v)
        assert abs(c) <= 1 + 1e-9
        assert c == pytest.approx(cosine_similarity(v, u), abs=1e-12)
        assert c == pytest.approx(cosine_similarity(alpha * u, v), abs=1e-9)
        assert cosine_similarity(u, u) == pytest.approx(1.0, abs=1e-6)


class TestLossBreakdown:
    def test_total_defaults_to_component_sum(self):
        b = LossBreakdown(ce=1.0, nouns=0.5, lgcl=0.0)
        assert b.total == pytest.approx(1.5)
        assert b.clip is None

    def test_absent_treated_as_zero(self):
        assert LossBreakdown(ce=2.0).total == pytest.approx(2.0)

    def test_random_breakdowns_sum(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            parts = rng.uniform(0, 3, size=4)
            mask = rng.uniform(size=3) < 0.5
            b = LossBreakdown(
                ce=parts[0],
                nouns=parts[1] if mask[0] else None,
                clip=parts[2] if mask[1] else None,
                lgcl=parts[3] if mask[2] else None,
            )
            assert abs(b.total - b.component_sum()) <= 1e-9


class TestStreamTypes:
    def _sample(self, image_id="img0", task_id=0, captions=("a cat",)):
        img = np.zeros((4, 4, 3), dtype=np.float32)
        return Sample(image_id=image_id, captions=captions, task_id=task_id, image=img)

    def test_sample_validation(self):
        with pytest.raises(DataError):
            Sample(image_id="x", captions=(), task_id=0)
        with pytest.raises(DataError):
            Sample(image_id="x", captions=("  ",), task_id=0)
        with pytest.raises(DataError):
            Sample(image_id="x", captions=("ok",), task_id=-1)
        with pytest.raises(DataError):
            Sample(image_id="x", captions=("ok",), task_id=0, image=np.zeros((4, 4, 1)))

    def test_split_disjointness_enforced(self):
        a, b = self._sample("a"), self._sample("b")
        with pytest.raises(DataError):
            TaskSplit(name="t", train=(a,), val=(a,), test=(b,))

    def test_stream_task_id_consistency(self):
        s0 = TaskSplit(name="t0", train=(self._sample("a", 0),), val=(), test=())
        bad = TaskSplit(name="t1", train=(self._sample("b", 0),), val=(), test=())
        with pytest.raises(DataError):
            TaskStream(tasks=(s0, bad))
        good = TaskSplit(name="t1", train=(self._sample("b", 1),), val=(), test=())
        stream = TaskStream(tasks=(s0, good))
        assert len(stream) == 2
        assert stream.names == ("t0", "t1")
