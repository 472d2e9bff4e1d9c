"""The four training objectives and their gated combination.

All losses are pure functions over torch tensors and reduce with the
arithmetic batch mean. The contrastive term defaults to the hinged triplet
form max(0, margin - s+ + s-); the unhinged variant (1 - s+ + s-) stays
available behind `hinge=False` for ablation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import torch
import torch.nn.functional as F

from .core import LossBreakdown
from .errors import DataError, NumericalError

IGNORE_INDEX = -100

LOSS_NAMES = ("ce", "nouns", "clip", "lgcl")


def _default_weights() -> dict[str, float]:
    return {name: 1.0 for name in LOSS_NAMES}


@dataclass
class LossConfig:
    """Gating and combination knobs for the composite objective."""

    use_lgcl: bool = True
    nouns_epochs: int = 2
    lgcl_margin: float = 1.0
    hinge: bool = True
    weights: dict[str, float] = field(default_factory=_default_weights)

    def __post_init__(self):
        if self.nouns_epochs < 0:
            raise DataError("nouns_epochs must be >= 0")
        merged = _default_weights()
        merged.update(self.weights)
        unknown = set(merged) - set(LOSS_NAMES)
        if unknown:
            raise DataError(f"unknown loss weights: {sorted(unknown)}")
        if any(w < 0 for w in merged.values()):
            raise DataError("loss weights must be >= 0")
        self.weights = merged


def cross_entropy(logits: torch.Tensor, labels: torch.Tensor) -> torch.Tensor:
    """Mean negative log-likelihood over unmasked label positions.

    `labels` uses IGNORE_INDEX for padding; a batch with every position
    masked has no defined mean and is rejected.
    """
    if logits.ndim != 3 or labels.ndim != 2 or logits.shape[:2] != labels.shape:
        raise DataError(f"shape mismatch: logits {tuple(logits.shape)} vs labels {tuple(labels.shape)}")
    if not torch.isfinite(logits).all():
        raise NumericalError("non-finite logits")
    n_live = int((labels != IGNORE_INDEX).sum())
    if n_live == 0:
        raise DataError("all label positions are masked; mean NLL undefined")
    return F.cross_entropy(
        logits.reshape(-1, logits.shape[-1]),
        labels.reshape(-1),
        ignore_index=IGNORE_INDEX,
        reduction="mean",
    )


def _check_rows(t: torch.Tensor, name: str, tol: float = 1e-3):
    if t.ndim != 2:
        raise DataError(f"{name}: expected n x d, got {tuple(t.shape)}")
    norms = t.norm(dim=-1)
    if bool(((norms - 1.0).abs() > tol).any()):
        raise DataError(f"{name}: rows must be unit-norm (worst |norm-1| = {float((norms - 1).abs().max()):.2e})")


def _alignment_loss(e_img: torch.Tensor, e_text: torch.Tensor, name: str) -> torch.Tensor:
    _check_rows(e_img, f"{name}: e_img")
    _check_rows(e_text, f"{name}: text embeddings")
    if e_img.shape != e_text.shape:
        raise DataError(f"{name}: shape mismatch {tuple(e_img.shape)} vs {tuple(e_text.shape)}")
    cos = (e_img * e_text).sum(dim=-1)
    return (1.0 - cos).mean()


def nouns_loss(e_img: torch.Tensor, e_prompt: torch.Tensor) -> torch.Tensor:
    """Mean of 1 - cos between image and prompt embeddings (unit rows)."""
    return _alignment_loss(e_img, e_prompt, "nouns_loss")


def clip_loss(e_img: torch.Tensor, e_caption: torch.Tensor) -> torch.Tensor:
    """Same functional form as nouns_loss, aligned to caption embeddings."""
    return _alignment_loss(e_img, e_caption, "clip_loss")


def lgcl_loss(
    e_img: torch.Tensor,
    e_pos: torch.Tensor,
    e_neg: torch.Tensor,
    margin: float = 1.0,
    hinge: bool = True,
) -> torch.Tensor:
    """Triplet loss mean(max(0, margin - s+ + s-)) over the batch.

    s+/s- are cosine similarities of each image row against its positive
    prompt and mined negative. `hinge=False` drops the clamp.
    """
    for t, name in ((e_img, "e_img"), (e_pos, "e_pos"), (e_neg, "e_neg")):
        _check_rows(t, f"lgcl_loss: {name}")
    if not (e_img.shape == e_pos.shape == e_neg.shape):
        raise DataError(
            f"lgcl_loss: shape mismatch {tuple(e_img.shape)} / {tuple(e_pos.shape)} / {tuple(e_neg.shape)}"
        )
    s_pos = (e_img * e_pos).sum(dim=-1)
    s_neg = (e_img * e_neg).sum(dim=-1)
    per_sample = margin - s_pos + s_neg
    if hinge:
        per_sample = torch.clamp(per_sample, min=0.0)
    return per_sample.mean()


def active_losses(epoch: int, task_num: int, cfg: LossConfig, neg_pool_size: int) -> frozenset[str]:
    """Which auxiliary components are live for a (task, epoch) pair.

    Epochs are 1-indexed per task. With the guidance losses disabled
    entirely (use_lgcl=False) only the token cross-entropy remains, i.e. the
    plain fine-tuning baseline.
    """
    if epoch < 1:
        raise DataError("epochs are 1-indexed")
    if not cfg.use_lgcl:
        return frozenset()
    parts = {"nouns"} if epoch <= cfg.nouns_epochs else {"clip"}
    if task_num > 0 and neg_pool_size > 0:
        parts.add("lgcl")
    return frozenset(parts)


def total_loss(parts, cfg: LossConfig):
    """Weighted sum of present components (unit weights reproduce the plain
    sum). Accepts a LossBreakdown or a {name: scalar|None} mapping; scalars
    may be floats or 0-dim tensors, and the result keeps that type.
    """
    if isinstance(parts, LossBreakdown):
        values = {"ce": parts.ce, "nouns": parts.nouns, "clip": parts.clip, "lgcl": parts.lgcl}
    else:
        unknown = set(parts) - set(LOSS_NAMES)
        if unknown:
            raise DataError(f"unknown loss components: {sorted(unknown)}")
        values = {name: parts.get(name) for name in LOSS_NAMES}
    if values["ce"] is None:
        raise DataError("ce component is required")
    total = None
    for name in LOSS_NAMES:
        v = values[name]
        if v is None:
            continue
        if float(v) < 0:
            raise DataError(f"negative {name} component: {float(v)}")
        term = cfg.weights[name] * v
        total = term if total is None else total + term
    return total


def breakdown(parts: dict, cfg: LossConfig) -> LossBreakdown:
    """Float LossBreakdown (for logs) from a component mapping."""
    as_float = {k: (None if v is None else float(v)) for k, v in parts.items()}
    return LossBreakdown(
        ce=as_float["ce"],
        nouns=as_float.get("nouns"),
        clip=as_float.get("clip"),
        lgcl=as_float.get("lgcl"),
        total=float(total_loss(parts, cfg)),
    )
