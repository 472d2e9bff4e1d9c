"""Fixed-vocabulary tokenizers behind one encode/decode interface.

Two interchangeable backends:

* `CharTokenizer` - a small greedy longest-match tokenizer over an explicit
  vocabulary (single characters by default, optionally whole words). Ships
  with a ~100-symbol built-in vocabulary so the test suite and the synthetic
  pipeline run with no downloaded assets. Defines explicit BOS/EOS/PAD/UNK.
* `BpeTokenizer` - loader for pretrained byte-level BPE assets in the
  published GPT-2 format (token->id JSON map plus a merges list, one rule per
  line, V = 50,257). Byte-level fallback makes coverage total, so
  decode(encode(s)) == s for any string. The pretrained vocabulary has no
  dedicated BOS or PAD; we reuse its end-of-text id for both, which is the
  common convention for this vocabulary.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import regex

from .core import TokenSeq
from .errors import DataError

# Split pattern used by the pretrained byte-level BPE vocabulary.
_BPE_SPLIT = regex.compile(
    r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""
)

DESK_CHARS = (
    "abcdefghijklmnopqrstuvwxyz"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "0123456789"
    " .,;:!?'\"-()"
)


@dataclass(frozen=True)
class Vocabulary:
    """Bijective token<->id maps plus reserved control ids.

    `strict_controls` enforces pairwise-distinct reserved ids; the pretrained
    BPE vocabulary shares one end-of-text id for all controls and loads with
    the check relaxed.
    """

    token_to_id: dict[str, int]
    bos_id: int
    eos_id: int
    pad_id: int
    unk_id: int | None = None
    strict_controls: bool = True

    def __post_init__(self):
        ids = list(self.token_to_id.values())
        if len(set(ids)) != len(ids):
            raise DataError("token_to_id is not injective")
        if self.size <= 3:
            raise DataError(f"vocabulary too small: {self.size}")
        reserved = [self.bos_id, self.eos_id, self.pad_id]
        if self.strict_controls and len(set(reserved)) != len(reserved):
            raise DataError(f"reserved ids must be distinct, got {reserved}")
        for rid in reserved:
            if not 0 <= rid < self.size:
                raise DataError(f"reserved id {rid} out of range [0, {self.size})")
        object.__setattr__(self, "id_to_token", {i: t for t, i in self.token_to_id.items()})

    @property
    def size(self) -> int:
        return len(self.token_to_id)

    @property
    def control_ids(self) -> frozenset[int]:
        ids = {self.bos_id, self.eos_id, self.pad_id}
        if self.unk_id is not None:
            ids.add(self.unk_id)
        return frozenset(ids)


def build_desk_vocab(extra_tokens: tuple[str, ...] = ()) -> Vocabulary:
    """Built-in character vocabulary (~100 symbols) plus optional word tokens.

    Layout: ids 0..3 are PAD/BOS/EOS/UNK, then single characters, then
    `extra_tokens` (deduplicated, order preserved). Word tokens make the
    synthetic captions much shorter to model; the character tier guarantees
    every in-domain string still encodes.
    """
    tokens = ["<pad>", "<bos>", "<eos>", "<unk>"]
    tokens.extend(DESK_CHARS)
    seen = set(tokens)
    for tok in extra_tokens:
        if tok and tok not in seen:
            tokens.append(tok)
            seen.add(tok)
    return Vocabulary(
        token_to_id={t: i for i, t in enumerate(tokens)},
        bos_id=1,
        eos_id=2,
        pad_id=0,
        unk_id=3,
    )


class CharTokenizer:
    """Greedy longest-match tokenizer over an explicit Vocabulary.

    Unknown characters map to the reserved unknown id; round-trip is exact on
    the vocabulary's character domain.
    """

    def __init__(self, vocab: Vocabulary | None = None):
        self.vocab = vocab if vocab is not None else build_desk_vocab()
        self._max_len = max(len(t) for t in self.vocab.token_to_id)

    @property
    def vocab_size(self) -> int:
        return self.vocab.size

    @property
    def bos_id(self) -> int:
        return self.vocab.bos_id

    @property
    def eos_id(self) -> int:
        return self.vocab.eos_id

    @property
    def pad_id(self) -> int:
        return self.vocab.pad_id

    def encode(self, text: str) -> TokenSeq:
        t2i = self.vocab.token_to_id
        ids: list[int] = []
        i, n = 0, len(text)
        while i < n:
            match_id = None
            for ln in range(min(self._max_len, n - i), 0, -1):
                cand = text[i : i + ln]
                got = t2i.get(cand)
                if got is not None:
                    match_id = got
                    i += ln
                    break
            if match_id is None:
                if self.vocab.unk_id is None:
                    raise DataError(f"character {text[i]!r} not in vocabulary")
                match_id = self.vocab.unk_id
                i += 1
            ids.append(match_id)
        return TokenSeq(tuple(ids))

    def decode(self, ids) -> str:
        if isinstance(ids, TokenSeq):
            ids = ids.ids
        controls = self.vocab.control_ids
        i2t = self.vocab.id_to_token
        out = []
        for i in ids:
            i = int(i)
            if i < 0 or i >= self.vocab.size:
                raise DataError(f"token id {i} out of range [0, {self.vocab.size})")
            if i in controls:
                continue
            out.append(i2t[i])
        return "".join(out)


@lru_cache(maxsize=1)
def _bytes_to_unicode() -> dict[int, str]:
    # Printable-byte identity map plus shifted codepoints for the rest, as
    # published with the pretrained vocabulary.
    bs = list(range(ord("!"), ord("~") + 1)) + list(range(0xA1, 0xAD)) + list(range(0xAE, 0x100))
    cs = bs[:]
    n = 0
    for b in range(256):
        if b not in bs:
            bs.append(b)
            cs.append(256 + n)
            n += 1
    return dict(zip(bs, map(chr, cs)))


class BpeTokenizer:
    """Byte-level BPE over pretrained vocab/merges files (GPT-2 format)."""

    END_OF_TEXT = "<|endoftext|>"

    def __init__(self, vocab_file: str | Path, merges_file: str | Path):
        with open(vocab_file, encoding="utf-8") as f:
            token_to_id: dict[str, int] = json.load(f)
        merges: list[tuple[str, str]] = []
        with open(merges_file, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                a, b = line.split()
                merges.append((a, b))
        if self.END_OF_TEXT not in token_to_id:
            raise DataError(f"vocab file lacks {self.END_OF_TEXT}")
        eot = token_to_id[self.END_OF_TEXT]
        self.vocab = Vocabulary(
            token_to_id=token_to_id,
            bos_id=eot,
            eos_id=eot,
            pad_id=eot,
            strict_controls=False,
        )
        self._ranks = {pair: i for i, pair in enumerate(merges)}
        self._byte_enc = _bytes_to_unicode()
        self._byte_dec = {v: k for k, v in self._byte_enc.items()}
        self._bpe_cache: dict[str, tuple[str, ...]] = {}

    @property
    def vocab_size(self) -> int:
        return self.vocab.size

    @property
    def bos_id(self) -> int:
        return self.vocab.bos_id

    @property
    def eos_id(self) -> int:
        return self.vocab.eos_id

    @property
    def pad_id(self) -> int:
        return self.vocab.pad_id

    def _bpe(self, token: str) -> tuple[str, ...]:
        cached = self._bpe_cache.get(token)
        if cached is not None:
            return cached
        word = tuple(token)
        while len(word) >= 2:
            pairs = {(word[i], word[i + 1]) for i in range(len(word) - 1)}
            best = min(pairs, key=lambda p: self._ranks.get(p, float("inf")))
            if best not in self._ranks:
                break
            merged = []
            i = 0
            while i < len(word):
                if i < len(word) - 1 and (word[i], word[i + 1]) == best:
                    merged.append(word[i] + word[i + 1])
                    i += 2
                else:
                    merged.append(word[i])
                    i += 1
            word = tuple(merged)
        self._bpe_cache[token] = word
        return word

    def encode(self, text: str) -> TokenSeq:
        t2i = self.vocab.token_to_id
        ids: list[int] = []
        for chunk in _BPE_SPLIT.findall(text):
            mapped = "".join(self._byte_enc[b] for b in chunk.encode("utf-8"))
            ids.extend(t2i[piece] for piece in self._bpe(mapped))
        return TokenSeq(tuple(ids))

    def decode(self, ids) -> str:
        if isinstance(ids, TokenSeq):
            ids = ids.ids
        i2t = self.vocab.id_to_token
        pieces = []
        for i in ids:
            i = int(i)
            if i < 0 or i >= self.vocab.size:
                raise DataError(f"token id {i} out of range [0, {self.vocab.size})")
            tok = i2t[i]
            if tok == self.END_OF_TEXT:
                continue
            pieces.append(tok)
        raw = bytes(self._byte_dec[c] for c in "".join(pieces))
        return raw.decode("utf-8", errors="replace")
