"""Salient-token extraction, prompt rendering, and the positive/negative
prompt-embedding pools used by the guided-contrastive objective.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch

from .errors import DataError
from .pos import default_tagger, words

# Fixed prompt template; a single constant so ablations can swap it.
PROMPT_TEMPLATE = "An image of {nouns}; attributes: {adjectives}; actions: {verbs}"

UNIT_NORM_TOL = 1e-3


@dataclass(frozen=True)
class PromptRecord:
    """Salient tokens of one caption plus the rendered prompt string.

    Token lists are lowercase, deduplicated, in order of first occurrence.
    """

    nouns: tuple[str, ...]
    adjectives: tuple[str, ...]
    verbs: tuple[str, ...]
    source: str
    rendered: str = ""

    def __post_init__(self):
        if not self.rendered:
            object.__setattr__(self, "rendered", render_prompt(self))

    @property
    def is_empty(self) -> bool:
        return not (self.nouns or self.adjectives or self.verbs)


def extract_salient(caption: str, tagger=None) -> PromptRecord:
    """Classify caption tokens into nouns/adjectives/verbs.

    Stopwords and non-content tokens are excluded; a caption with zero
    content tokens yields empty lists (render falls back to the caption).
    """
    if not caption.strip():
        raise DataError("cannot extract from an empty caption")
    if tagger is None:
        tagger = default_tagger()
    buckets: dict[str, list[str]] = {"N": [], "A": [], "V": []}
    seen: set[str] = set()
    for w in words(caption):
        if w in seen:
            continue
        tag = tagger.tag(w)
        if tag is None:
            continue
        seen.add(w)
        buckets[tag].append(w)
    return PromptRecord(
        nouns=tuple(buckets["N"]),
        adjectives=tuple(buckets["A"]),
        verbs=tuple(buckets["V"]),
        source=caption,
    )


def render_prompt(rec: PromptRecord) -> str:
    """Render the fixed prompt template, omitting empty sections.

    An all-empty record falls back to the full source caption; an empty
    prompt would make the prompt-alignment loss degenerate.
    """
    if rec.is_empty:
        return rec.source
    parts = [f"An image of {', '.join(rec.nouns)}" if rec.nouns else "An image of something"]
    if rec.adjectives:
        parts.append(f"attributes: {', '.join(rec.adjectives)}")
    if rec.verbs:
        parts.append(f"actions: {', '.join(rec.verbs)}")
    return "; ".join(parts)


def _check_unit_rows(t: torch.Tensor, what: str):
    norms = t.norm(dim=-1)
    bad = (norms - 1.0).abs() > UNIT_NORM_TOL
    if bool(bad.any()):
        raise DataError(f"{what}: rows must be unit-norm, worst |norm-1| = {float((norms - 1).abs().max())}")


@dataclass
class PromptPools:
    """Prompt-embedding pools for negative mining.

    `current` collects this task's (detached, unit-norm) prompt embeddings;
    `neg` holds embeddings from strictly earlier tasks. Provenance task ids
    ride along for auditing. `cap` bounds each pool via seeded reservoir
    subsampling at task commit.
    """

    dim: int
    cap: int = 10000
    current: list[torch.Tensor] = field(default_factory=list)
    current_tasks: list[int] = field(default_factory=list)
    neg: list[torch.Tensor] = field(default_factory=list)
    neg_tasks: list[int] = field(default_factory=list)

    def append_positives(self, vecs: torch.Tensor, task_id: int):
        """Append a batch (n x d) of unit-norm prompt embeddings."""
        if vecs.ndim != 2 or vecs.shape[1] != self.dim:
            raise DataError(f"expected n x {self.dim} embeddings, got {tuple(vecs.shape)}")
        _check_unit_rows(vecs, "positive prompt embeddings")
        for row in vecs.detach().to(torch.float32):
            self.current.append(row.clone())
            self.current_tasks.append(task_id)

    @property
    def neg_size(self) -> int:
        return len(self.neg)

    def state_dict(self) -> dict:
        return {
            "dim": self.dim,
            "cap": self.cap,
            "current": [v.tolist() for v in self.current],
            "current_tasks": list(self.current_tasks),
            "neg": [v.tolist() for v in self.neg],
            "neg_tasks": list(self.neg_tasks),
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "PromptPools":
        pools = cls(dim=int(d["dim"]), cap=int(d["cap"]))
        pools.current = [torch.tensor(v, dtype=torch.float32) for v in d["current"]]
        pools.current_tasks = [int(t) for t in d["current_tasks"]]
        pools.neg = [torch.tensor(v, dtype=torch.float32) for v in d["neg"]]
        pools.neg_tasks = [int(t) for t in d["neg_tasks"]]
        return pools


def select_negative(e_img: torch.Tensor, pools: PromptPools, B: int) -> torch.Tensor | None:
    """Pick one stored negative per batch row.

    With at least B stored negatives, row i gets the pool entry with minimal
    similarity e_img[i] . neg_j (ties break to the lowest index); a smaller
    non-empty pool broadcasts its first entry. Returns None when the pool is
    empty so the caller can skip the contrastive term.
    """
    if e_img.ndim != 2:
        raise DataError(f"expected n x d image embeddings, got {tuple(e_img.shape)}")
    if e_img.shape[1] != pools.dim:
        raise DataError(f"dimension mismatch: embeddings d={e_img.shape[1]}, pool d={pools.dim}")
    _check_unit_rows(e_img, "image embeddings")
    if pools.neg_size == 0:
        return None
    stack = torch.stack(pools.neg).to(e_img.dtype)
    if pools.neg_size >= B:
        sims = e_img.detach() @ stack.T
        idx = torch.argmin(sims, dim=1)
        return stack[idx]
    return stack[0].expand(e_img.shape[0], -1).clone()


def commit_task(pools: PromptPools, seed: int = 0) -> PromptPools:
    """Merge the finished task's pool into the negatives and clear it.

    Called once per task boundary. If the merge exceeds `cap`, a seeded
    subsample of `cap` entries is retained (original order preserved).
    """
    merged = pools.neg + pools.current
    merged_tasks = pools.neg_tasks + pools.current_tasks
    if len(merged) > pools.cap:
        rng = np.random.default_rng(seed)
        keep = np.sort(rng.choice(len(merged), size=pools.cap, replace=False))
        merged = [merged[i] for i in keep]
        merged_tasks = [merged_tasks[i] for i in keep]
    out = PromptPools(dim=pools.dim, cap=pools.cap)
    out.neg = list(merged)
    out.neg_tasks = list(merged_tasks)
    return out
