"""Domain types shared by every module: samples, task streams, token
sequences, embeddings, and per-step loss breakdowns.

All types are immutable value objects after construction and safe to share
across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DegenerateVectorError

NORM_TOL = 1e-5


@dataclass(frozen=True)
class Sample:
    """One (image, captions) example belonging to a single task.

    `image` is an H x W x 3 float array with values in [0, 1]. It may be None
    for manifest-only samples (e.g. COCO streams built without pixel data);
    every other invariant is always enforced.
    """

    image_id: str
    captions: tuple[str, ...]
    task_id: int
    image: np.ndarray | None = None
    file: str | None = None

    def __post_init__(self):
        if not self.captions or len(self.captions) > 5:
            raise DataError(f"sample {self.image_id!r}: need 1..5 captions, got {len(self.captions)}")
        if any(not c.strip() for c in self.captions):
            raise DataError(f"sample {self.image_id!r}: empty caption")
        if self.task_id < 0:
            raise DataError(f"sample {self.image_id!r}: negative task_id")
        if self.image is not None:
            if self.image.ndim != 3 or self.image.shape[2] != 3:
                raise DataError(f"sample {self.image_id!r}: image must be HxWx3, got {self.image.shape}")
            if self.image.shape[0] <= 0 or self.image.shape[1] <= 0:
                raise DataError(f"sample {self.image_id!r}: non-positive image dims")
        object.__setattr__(self, "captions", tuple(self.captions))


@dataclass(frozen=True)
class TaskSplit:
    """Train/val/test sample sets for one task."""

    name: str
    train: tuple[Sample, ...]
    val: tuple[Sample, ...]
    test: tuple[Sample, ...]

    def __post_init__(self):
        object.__setattr__(self, "train", tuple(self.train))
        object.__setattr__(self, "val", tuple(self.val))
        object.__setattr__(self, "test", tuple(self.test))
        ids = [s.image_id for part in (self.train, self.val, self.test) for s in part]
        by_part = [{s.image_id for s in part} for part in (self.train, self.val, self.test)]
        if (by_part[0] & by_part[1]) or (by_part[0] & by_part[2]) or (by_part[1] & by_part[2]):
            raise DataError(f"task {self.name!r}: train/val/test share image ids")
        del ids

    @property
    def all_samples(self) -> tuple[Sample, ...]:
        return self.train + self.val + self.test


@dataclass(frozen=True)
class TaskStream:
    """Ordered sequence of tasks; task indices are contiguous from 0."""

    tasks: tuple[TaskSplit, ...]

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        for t, split in enumerate(self.tasks):
            for s in split.all_samples:
                if s.task_id != t:
                    raise DataError(f"task {t}: sample {s.image_id!r} carries task_id {s.task_id}")

    def __len__(self) -> int:
        return len(self.tasks)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tasks)


@dataclass(frozen=True)
class TokenSeq:
    """Tokenized text: integer ids plus control-token flags."""

    ids: tuple[int, ...]
    has_bos: bool = False
    has_eos: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(int(i) for i in self.ids))

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class EmbeddingVec:
    """Dense 1-D embedding; `normalized` asserts unit L2 norm within NORM_TOL."""

    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise DataError(f"embedding must be 1-D, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.normalized:
            n = float(np.linalg.norm(v))
            if abs(n - 1.0) > NORM_TOL:
                raise DegenerateVectorError(f"normalized flag set but ||v|| = {n}")

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class LossBreakdown:
    """Per-step loss components; absent components are None and count as 0.

    With unit weights (the default combination) `total` equals the sum of the
    present components.
    """

    ce: float
    total: float = field(default=None)  # type: ignore[assignment]
    nouns: float | None = None
    clip: float | None = None
    lgcl: float | None = None

    def __post_init__(self):
        if self.total is None:
            object.__setattr__(self, "total", self.component_sum())

    def component_sum(self) -> float:
        return sum(v for v in (self.ce, self.nouns, self.clip, self.lgcl) if v is not None)


def _as_vector(v) -> np.ndarray:
    if isinstance(v, EmbeddingVec):
        return v.values
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise DataError(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


def normalize(v) -> EmbeddingVec:
    """Scale `v` to unit L2 norm, preserving direction.

    Raises DegenerateVectorError for (near-)zero input instead of silently
    returning zeros: a zero embedding means the encoder collapsed.
    """
    arr = _as_vector(v)
    n = float(np.linalg.norm(arr))
    if n <= 0.0 or not np.isfinite(n):
        raise DegenerateVectorError(f"cannot normalize vector with norm {n}")
    return EmbeddingVec(arr / n, normalized=True)


def cosine_similarity(u, v) -> float:
    """cos(u, v) = u.v / (||u|| ||v||); symmetric and scale-invariant."""
    a, b = _as_vector(u), _as_vector(v)
    if a.shape != b.shape:
        raise DataError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na <= 0.0 or nb <= 0.0:
        raise DegenerateVectorError("cosine similarity of a zero vector is undefined")
    return float(np.dot(a, b) / (na * nb))
