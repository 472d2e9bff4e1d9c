"""Reference captioner and frozen text encoder.

A small from-scratch transformer pair satisfying the same contracts a
pretrained ViT+LM backbone would be mounted behind:

* `CaptionerModel` - patch vision encoder + autoregressive text decoder with
  cross-attention; also pools and projects patch features into the shared
  d_embed space (`e_img`, pre-normalization).
* `FrozenTextEncoder` - bidirectional encoder over token ids, mean-pooled and
  projected into the same space. Its token embedding starts as a copy of the
  captioner's table; every parameter is frozen at construction.

Images cross the model boundary channel-last (n x H x W x 3), already
normalized to model space; `normalize_images` converts [0, 1] arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from . import losses
from .errors import DataError


@dataclass
class ModelConfig:
    vocab_size: int
    d_model: int = 128
    d_embed: int = 128
    n_heads: int = 4
    enc_layers: int = 2
    dec_layers: int = 2
    text_enc_layers: int = 2
    ffn_dim: int = 512
    image_size: int = 64
    patch_size: int = 16
    max_text_len: int = 64
    dropout: float = 0.0
    pad_id: int = 0
    seed: int = 0
    freeze_vision: bool = False
    freeze_decoder: bool = False
    normalize_mean: tuple[float, float, float] = (0.5, 0.5, 0.5)
    normalize_std: tuple[float, float, float] = (0.5, 0.5, 0.5)

    def __post_init__(self):
        if self.d_model % self.n_heads != 0:
            raise DataError(f"d_model {self.d_model} not divisible by n_heads {self.n_heads}")
        if self.image_size % self.patch_size != 0:
            raise DataError(f"image_size {self.image_size} not divisible by patch_size {self.patch_size}")
        if min(self.vocab_size, self.d_model, self.d_embed, self.enc_layers, self.dec_layers) < 1:
            raise DataError("model dimensions must be positive")

    @property
    def n_patches(self) -> int:
        return (self.image_size // self.patch_size) ** 2

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["normalize_mean"] = list(self.normalize_mean)
        d["normalize_std"] = list(self.normalize_std)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        d = dict(d)
        d["normalize_mean"] = tuple(d["normalize_mean"])
        d["normalize_std"] = tuple(d["normalize_std"])
        return cls(**d)


def normalize_images(images, cfg: ModelConfig) -> torch.Tensor:
    """[0,1] channel-last images (numpy or tensor) -> model-space tensor."""
    t = torch.as_tensor(np.asarray(images) if not torch.is_tensor(images) else images)
    t = t.to(torch.get_default_dtype())
    if t.ndim == 3:
        t = t.unsqueeze(0)
    if t.ndim != 4 or t.shape[-1] != 3:
        raise DataError(f"expected n x H x W x 3 images, got {tuple(t.shape)}")
    mean = t.new_tensor(cfg.normalize_mean)
    std = t.new_tensor(cfg.normalize_std)
    return (t - mean) / std


class MultiHeadAttention(nn.Module):
    def __init__(self, d_model: int, n_heads: int, dropout: float = 0.0):
        super().__init__()
        self.n_heads = n_heads
        self.head_dim = d_model // n_heads
        self.q_proj = nn.Linear(d_model, d_model)
        self.k_proj = nn.Linear(d_model, d_model)
        self.v_proj = nn.Linear(d_model, d_model)
        self.out_proj = nn.Linear(d_model, d_model)
        self.dropout = nn.Dropout(dropout)

    def forward(self, query, key, value, causal=False, key_padding_mask=None):
        n, lq, d = query.shape
        lk = key.shape[1]
        q = self.q_proj(query).view(n, lq, self.n_heads, self.head_dim).transpose(1, 2)
        k = self.k_proj(key).view(n, lk, self.n_heads, self.head_dim).transpose(1, 2)
        v = self.v_proj(value).view(n, lk, self.n_heads, self.head_dim).transpose(1, 2)
        scores = (q @ k.transpose(-2, -1)) * (self.head_dim ** -0.5)
        if causal:
            cm = torch.triu(torch.ones(lq, lk, dtype=torch.bool, device=scores.device), diagonal=1)
            scores = scores.masked_fill(cm, float("-inf"))
        if key_padding_mask is not None:
            scores = scores.masked_fill(key_padding_mask[:, None, None, :], float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        attn = self.dropout(attn)
        out = (attn @ v).transpose(1, 2).reshape(n, lq, d)
        return self.out_proj(out)


class FeedForward(nn.Module):
    def __init__(self, d_model: int, ffn_dim: int, dropout: float = 0.0):
        super().__init__()
        self.fc1 = nn.Linear(d_model, ffn_dim)
        self.fc2 = nn.Linear(ffn_dim, d_model)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x):
        return self.fc2(self.dropout(torch.relu(self.fc1(x))))


class EncoderBlock(nn.Module):
    def __init__(self, d_model, n_heads, ffn_dim, dropout=0.0):
        super().__init__()
        self.attn = MultiHeadAttention(d_model, n_heads, dropout)
        self.ln1 = nn.LayerNorm(d_model)
        self.ffn = FeedForward(d_model, ffn_dim, dropout)
        self.ln2 = nn.LayerNorm(d_model)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x, key_padding_mask=None):
        x = self.ln1(x + self.dropout(self.attn(x, x, x, key_padding_mask=key_padding_mask)))
        x = self.ln2(x + self.dropout(self.ffn(x)))
        return x


class DecoderBlock(nn.Module):
    def __init__(self, d_model, n_heads, ffn_dim, dropout=0.0):
        super().__init__()
        self.self_attn = MultiHeadAttention(d_model, n_heads, dropout)
        self.ln1 = nn.LayerNorm(d_model)
        self.cross_attn = MultiHeadAttention(d_model, n_heads, dropout)
        self.ln2 = nn.LayerNorm(d_model)
        self.ffn = FeedForward(d_model, ffn_dim, dropout)
        self.ln3 = nn.LayerNorm(d_model)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x, memory):
        x = self.ln1(x + self.dropout(self.self_attn(x, x, x, causal=True)))
        x = self.ln2(x + self.dropout(self.cross_attn(x, memory, memory)))
        x = self.ln3(x + self.dropout(self.ffn(x)))
        return x


class VisionEncoder(nn.Module):
    """Patchify -> learned positions -> transformer encoder stack."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        patch_dim = cfg.patch_size * cfg.patch_size * 3
        self.patch_proj = nn.Linear(patch_dim, cfg.d_model)
        self.pos_emb = nn.Parameter(torch.zeros(cfg.n_patches, cfg.d_model))
        nn.init.normal_(self.pos_emb, std=0.02)
        self.blocks = nn.ModuleList(
            EncoderBlock(cfg.d_model, cfg.n_heads, cfg.ffn_dim, cfg.dropout) for _ in range(cfg.enc_layers)
        )

    def forward(self, images: torch.Tensor) -> torch.Tensor:
        n, h, w, c = images.shape
        p = self.cfg.patch_size
        if c != 3 or h != self.cfg.image_size or w != self.cfg.image_size:
            raise DataError(
                f"expected n x {self.cfg.image_size} x {self.cfg.image_size} x 3 images, got {tuple(images.shape)}"
            )
        x = images.view(n, h // p, p, w // p, p, c)
        x = x.permute(0, 1, 3, 2, 4, 5).reshape(n, self.cfg.n_patches, p * p * c)
        x = self.patch_proj(x) + self.pos_emb
        for blk in self.blocks:
            x = blk(x)
        return x


class CaptionDecoder(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        self.token_emb = nn.Embedding(cfg.vocab_size, cfg.d_model)
        self.pos_emb = nn.Parameter(torch.zeros(cfg.max_text_len, cfg.d_model))
        nn.init.normal_(self.pos_emb, std=0.02)
        self.blocks = nn.ModuleList(
            DecoderBlock(cfg.d_model, cfg.n_heads, cfg.ffn_dim, cfg.dropout) for _ in range(cfg.dec_layers)
        )
        self.head = nn.Linear(cfg.d_model, cfg.vocab_size)

    def forward(self, input_ids: torch.Tensor, memory: torch.Tensor) -> torch.Tensor:
        n, L = input_ids.shape
        if L > self.cfg.max_text_len:
            raise DataError(f"sequence length {L} exceeds max_text_len {self.cfg.max_text_len}")
        if int(input_ids.max()) >= self.cfg.vocab_size or int(input_ids.min()) < 0:
            raise DataError("input_ids out of vocabulary range")
        x = self.token_emb(input_ids) + self.pos_emb[:L]
        for blk in self.blocks:
            x = blk(x, memory)
        return self.head(x)


class CaptionerModel(nn.Module):
    """Trainable vision encoder + caption decoder + shared-space projection."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        self.vision = VisionEncoder(cfg)
        self.decoder = CaptionDecoder(cfg)
        self.img_proj = nn.Linear(cfg.d_model, cfg.d_embed)

    def image_embedding(self, images: torch.Tensor) -> torch.Tensor:
        """Pooled, projected image representation (pre-normalization)."""
        return self.img_proj(self.vision(images).mean(dim=1))

    def forward(self, images, input_ids, labels=None):
        """Returns (ce_loss | None, e_img, logits); images are model-space."""
        feats = self.vision(images)
        e_img = self.img_proj(feats.mean(dim=1))
        logits = self.decoder(input_ids, feats)
        ce = losses.cross_entropy(logits, labels) if labels is not None else None
        return ce, e_img, logits

    def parameter_count(self) -> int:
        return sum(p.numel() for p in self.parameters())

    def architecture_manifest(self) -> list[dict]:
        """Names/dtypes/shapes of every parameter, in registration order."""
        return [
            {"name": name, "dtype": str(p.dtype).removeprefix("torch."), "shape": list(p.shape)}
            for name, p in self.named_parameters()
        ]


class FrozenTextEncoder(nn.Module):
    """Frozen bidirectional encoder mapping token batches into d_embed space."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        self.token_emb = nn.Embedding(cfg.vocab_size, cfg.d_model)
        self.pos_emb = nn.Parameter(torch.zeros(cfg.max_text_len, cfg.d_model))
        nn.init.normal_(self.pos_emb, std=0.02)
        self.blocks = nn.ModuleList(
            EncoderBlock(cfg.d_model, cfg.n_heads, cfg.ffn_dim, dropout=0.0)
            for _ in range(cfg.text_enc_layers)
        )
        self.proj = nn.Linear(cfg.d_model, cfg.d_embed)

    def freeze(self):
        for p in self.parameters():
            p.requires_grad_(False)
        self.eval()
        return self

    def forward(self, ids: torch.Tensor) -> torch.Tensor:
        """Mean-pool non-pad positions, project to d_embed (caller normalizes)."""
        if ids.ndim != 2 or ids.shape[1] == 0:
            raise DataError(f"expected non-empty n x L token batch, got {tuple(ids.shape)}")
        if int(ids.max()) >= self.cfg.vocab_size or int(ids.min()) < 0:
            raise DataError("token ids out of vocabulary range")
        if ids.shape[1] > self.cfg.max_text_len:
            raise DataError(f"sequence length {ids.shape[1]} exceeds max_text_len {self.cfg.max_text_len}")
        pad = ids == self.cfg.pad_id
        if bool(pad.all(dim=1).any()):
            raise DataError("a sequence in the batch is empty (all padding)")
        x = self.token_emb(ids) + self.pos_emb[: ids.shape[1]]
        for blk in self.blocks:
            x = blk(x, key_padding_mask=pad)
        keep = (~pad).unsqueeze(-1).to(x.dtype)
        pooled = (x * keep).sum(dim=1) / keep.sum(dim=1)
        return self.proj(pooled)


def captioner_forward(model: CaptionerModel, images, input_ids, labels):
    """(L_CE, e_img, logits) for a batch; the spec-level forward contract."""
    return model(images, input_ids, labels)


def encode_text(enc: FrozenTextEncoder, ids: torch.Tensor) -> torch.Tensor:
    with torch.no_grad():
        return enc(ids)


def build_reference_model(cfg: ModelConfig) -> tuple[CaptionerModel, FrozenTextEncoder]:
    """Deterministically seeded captioner + frozen text encoder pair.

    The text encoder's token embedding starts as a copy of the captioner
    decoder's table (they share the vocabulary) and is then frozen with the
    rest of its parameters.
    """
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(cfg.seed)
        model = CaptionerModel(cfg)
        text_enc = FrozenTextEncoder(cfg)
    with torch.no_grad():
        text_enc.token_emb.weight.copy_(model.decoder.token_emb.weight)
    text_enc.freeze()
    return model, text_enc


def micro_config(vocab_size: int = 12, seed: int = 0) -> ModelConfig:
    """Smallest useful configuration, for gradient checks and fast tests."""
    return ModelConfig(
        vocab_size=vocab_size,
        d_model=16,
        d_embed=8,
        n_heads=2,
        enc_layers=1,
        dec_layers=1,
        text_enc_layers=1,
        ffn_dim=32,
        image_size=16,
        patch_size=8,
        max_text_len=12,
        seed=seed,
    )
