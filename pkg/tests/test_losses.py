import math

import pytest
import torch

from capstream.core import LossBreakdown
from capstream.errors import DataError, NumericalError
from capstream.losses import (
    IGNORE_INDEX,
    LossConfig,
    active_losses,
    breakdown,
    clip_loss,
    cross_entropy,
    lgcl_loss,
    nouns_loss,
    total_loss,
)

ATOL = 1e-6


def rows(*vecs):
    t = torch.tensor(vecs, dtype=torch.float32)
    return t / t.norm(dim=1, keepdim=True)


class TestCrossEntropy:
    def test_perfect_prediction_is_zero(self):
        logits = torch.full((1, 2, 4), -30.0)
        logits[0, 0, 1] = 30.0
        logits[0, 1, 2] = 30.0
        labels = torch.tensor([[1, 2]])
        assert float(cross_entropy(logits, labels)) == pytest.approx(0.0, abs=ATOL)

    def test_uniform_logits(self):
        logits = torch.zeros(2, 3, 4)
        labels = torch.zeros(2, 3, dtype=torch.long)
        assert float(cross_entropy(logits, labels)) == pytest.approx(math.log(4), abs=ATOL)

    def test_hand_computed_mean(self):
        # two live positions with target probs 0.5 and 0.25
        logits = torch.full((1, 2, 4), -1e9)
        logits[0, 0, :2] = 0.0  # p(target)=1/2
        logits[0, 1, :4] = 0.0  # p(target)=1/4
        labels = torch.tensor([[0, 0]])
        want = (math.log(2) + math.log(4)) / 2
        assert float(cross_entropy(logits, labels)) == pytest.approx(want, abs=1e-5)

    def test_masked_positions_excluded(self):
        logits = torch.zeros(1, 2, 4)
        labels = torch.tensor([[1, IGNORE_INDEX]])
        assert float(cross_entropy(logits, labels)) == pytest.approx(math.log(4), abs=ATOL)

    def test_all_masked_rejected(self):
        with pytest.raises(DataError):
            cross_entropy(torch.zeros(1, 2, 4), torch.full((1, 2), IGNORE_INDEX))

    def test_non_finite_logits_rejected(self):
        logits = torch.zeros(1, 1, 4)
        logits[0, 0, 0] = float("nan")
        with pytest.raises(NumericalError):
            cross_entropy(logits, torch.tensor([[1]]))


class TestAlignmentLosses:
    def test_aligned_is_zero(self):
        e = rows([1, 0], [0, 1])
        assert float(nouns_loss(e, e)) == pytest.approx(0.0, abs=ATOL)

    def test_orthogonal_is_one(self):
        a = rows([1, 0], [0, 1])
        b = rows([0, 1], [1, 0])
        assert float(nouns_loss(a, b)) == pytest.approx(1.0, abs=ATOL)

    def test_antipodal_is_two(self):
        a = rows([1, 0])
        assert float(nouns_loss(a, -a)) == pytest.approx(2.0, abs=ATOL)

    def test_clip_equals_nouns_on_same_inputs(self):
        g = torch.Generator().manual_seed(0)
        a = torch.randn(6, 8, generator=g)
        b = torch.randn(6, 8, generator=g)
        a = a / a.norm(dim=1, keepdim=True)
        b = b / b.norm(dim=1, keepdim=True)
        assert float(clip_loss(a, b)) == pytest.approx(float(nouns_loss(a, b)), abs=ATOL)

    def test_mixed_batch_mean(self):
        a = rows([1, 0], [1, 0])
        b = rows([1, 0], [0, 1])
        assert float(clip_loss(a, b)) == pytest.approx(0.5, abs=ATOL)

    def test_non_normalized_rejected(self):
        with pytest.raises(DataError):
            nouns_loss(torch.tensor([[2.0, 0.0]]), rows([1, 0]))

    def test_rotation_invariance(self):
        g = torch.Generator().manual_seed(1)
        a = torch.randn(8, 6, generator=g)
        b = torch.randn(8, 6, generator=g)
        a = a / a.norm(dim=1, keepdim=True)
        b = b / b.norm(dim=1, keepdim=True)
        q, _ = torch.linalg.qr(torch.randn(6, 6, generator=g, dtype=torch.float64))
        q = q.to(torch.float32)
        base = float(nouns_loss(a, b))
        rot = float(nouns_loss(a @ q.T, b @ q.T))
        assert rot == pytest.approx(base, abs=1e-5)


class TestLgclLoss:
    def _triplet(self, s_pos, s_neg):
        # 2-d constructions achieving the requested similarities against [1, 0]
        e = rows([1, 0])

        def at(s):
            return rows([s, math.sqrt(max(0.0, 1 - s * s))])

        return e, at(s_pos), at(s_neg)

    def test_perfectly_separated(self):
        e, p, n = self._triplet(1.0, -1.0)
        assert float(lgcl_loss(e, p, n, margin=1.0)) == pytest.approx(0.0, abs=ATOL)

    def test_neutral(self):
        e, p, n = self._triplet(0.0, 0.0)
        assert float(lgcl_loss(e, p, n, margin=1.0)) == pytest.approx(1.0, abs=ATOL)

    def test_worst_case(self):
        e, p, n = self._triplet(-1.0, 1.0)
        assert float(lgcl_loss(e, p, n, margin=1.0)) == pytest.approx(3.0, abs=ATOL)

    def test_shape_mismatch(self):
        with pytest.raises(DataError):
            lgcl_loss(rows([1, 0]), rows([1, 0]), rows([1, 0, 0]))

    def test_monotone_on_grid(self):
        grid = torch.linspace(-1, 1, 21)
        for sn in grid:
            vals = [
                float(lgcl_loss(*self._triplet(float(sp), float(sn)))) for sp in grid
            ]
            assert all(a >= b - 1e-7 for a, b in zip(vals, vals[1:]))  # non-increasing in s+
        for sp in grid:
            vals = [
                float(lgcl_loss(*self._triplet(float(sp), float(sn)))) for sn in grid
            ]
            assert all(b >= a - 1e-7 for a, b in zip(vals, vals[1:]))  # non-decreasing in s-

    def test_inactive_hinge_zero_gradient(self):
        # 100-point grid over the inactive region margin - s+ + s- < 0
        torch.manual_seed(0)
        count = 0
        for sp in torch.linspace(0.2, 1.0, 10):
            for sn in torch.linspace(-1.0, -0.4, 10):
                sp_f, sn_f = float(sp), float(sn)
                if 1.0 - sp_f + sn_f >= 0:
                    continue
                count += 1
                e = torch.tensor([[1.0, 0.0]], requires_grad=True)
                p = rows([sp_f, math.sqrt(1 - sp_f**2)])
                n = rows([sn_f, math.sqrt(1 - sn_f**2)])
                loss = lgcl_loss(e, p, n, margin=1.0)
                loss.backward()
                assert float(loss.detach()) == 0.0
                assert torch.all(e.grad == 0)
        assert count >= 50

    def test_unhinged_form(self):
        e, p, n = self._triplet(0.9, -0.8)
        hinged = float(lgcl_loss(e, p, n, margin=1.0, hinge=True))
        raw = float(lgcl_loss(e, p, n, margin=1.0, hinge=False))
        assert hinged == pytest.approx(max(0.0, 1 - 0.9 - 0.8), abs=1e-5)
        assert raw == pytest.approx(1 - 0.9 - 0.8, abs=1e-5)


class TestGatingAndTotal:
    def test_sum_example(self):
        assert total_loss({"ce": 1.0, "nouns": 0.5, "lgcl": 0.0}, LossConfig()) == pytest.approx(1.5)

    def test_task0_epoch1(self):
        assert active_losses(1, 0, LossConfig(), neg_pool_size=0) == frozenset({"nouns"})

    def test_task2_epoch4(self):
        assert active_losses(4, 2, LossConfig(), neg_pool_size=10) == frozenset({"clip", "lgcl"})

    def test_epoch_boundary(self):
        cfg = LossConfig()
        assert "nouns" in active_losses(2, 1, cfg, 5)
        assert "clip" in active_losses(3, 1, cfg, 5)

    def test_lgcl_disabled_leaves_only_ce(self):
        cfg = LossConfig(use_lgcl=False)
        for epoch in (1, 3):
            for task in (0, 2):
                assert active_losses(epoch, task, cfg, 100) == frozenset()

    def test_lgcl_needs_pool(self):
        assert "lgcl" not in active_losses(3, 1, LossConfig(), neg_pool_size=0)

    def test_breakdown_matches_components(self):
        cfg = LossConfig()
        b = breakdown({"ce": torch.tensor(1.0), "nouns": torch.tensor(0.25)}, cfg)
        assert isinstance(b, LossBreakdown)
        assert b.total == pytest.approx(1.25)
        assert b.clip is None and b.lgcl is None

    def test_weighted_total(self):
        cfg = LossConfig(weights={"ce": 1.0, "nouns": 0.5, "clip": 1.0, "lgcl": 2.0})
        got = total_loss({"ce": 1.0, "nouns": 1.0, "lgcl": 0.25}, cfg)
        assert got == pytest.approx(1.0 + 0.5 + 0.5)

    def test_negative_component_rejected(self):
        with pytest.raises(DataError):
            total_loss({"ce": 1.0, "nouns": -0.1}, LossConfig())

    def test_unit_weights_equal_plain_sum(self):
        torch.manual_seed(0)
        cfg = LossConfig()
        for _ in range(200):
            parts = {
                "ce": float(torch.rand(())) * 3,
                "nouns": float(torch.rand(())) if torch.rand(()) > 0.5 else None,
                "clip": float(torch.rand(())) if torch.rand(()) > 0.5 else None,
                "lgcl": float(torch.rand(())) * 2 if torch.rand(()) > 0.5 else None,
            }
            want = sum(v for v in parts.values() if v is not None)
            assert total_loss(parts, cfg) == pytest.approx(want, abs=1e-9)

    def test_invalid_config(self):
        with pytest.raises(DataError):
            LossConfig(weights={"bogus": 1.0})
        with pytest.raises(DataError):
            LossConfig(weights={"ce": -1.0})
        with pytest.raises(DataError):
            LossConfig(nouns_epochs=-1)
