"""Deterministic rule/lexicon part-of-speech tagger for caption text.

Dependency-free by design: a ~3k-entry content lexicon (data/pos_lexicon.txt,
one "word POS" pair per line, POS in {N, A, V}) with suffix rules as the
fallback tier. Anything stronger can be plugged in wherever a
`tag(word) -> 'N'|'A'|'V'|None` callable is accepted.
"""
from __future__ import annotations

from importlib import resources

import regex

from .errors import DataError

STOPWORDS = frozenset(
    """
    a an the this that these those some any many few several all both each
    every no none other another such same what which whose one
    i me my mine we us our ours you your yours he him his she her hers it
    its they them their theirs who whom
    is are was were be been being am has have had having do does did doing
    will would can could shall should may might must not
    in on at of to from with without near by beside under over above below
    behind between among through across around along against onto into off
    out up down next atop underneath beneath upon within
    and or but nor so yet for as while during before after when where why
    how if because though although until unless than then there here
    very too also just only quite rather really still even again about
    """.split()
)

_WORD_RE = regex.compile(r"[a-z]+")

_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ship", "hood", "ture")
_ADJ_SUFFIXES = ("ous", "ful", "ish", "ive", "less", "able", "ible", "ic")


def words(text: str) -> list[str]:
    """Lowercase alphabetic tokens of `text` (possessive 's splits off)."""
    return _WORD_RE.findall(text.lower())


class RuleTagger:
    """Lexicon lookup first, then suffix heuristics, defaulting to noun.

    Captions are object-centric, so an unknown content word is most usefully
    treated as a noun.
    """

    def __init__(self, lexicon_path=None):
        if lexicon_path is None:
            text = resources.files("capstream.data").joinpath("pos_lexicon.txt").read_text("utf-8")
        else:
            with open(lexicon_path, encoding="utf-8") as f:
                text = f.read()
        self.lexicon: dict[str, str] = {}
        for ln, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                word, tag = line.split()
            except ValueError as e:
                raise DataError(f"lexicon line {ln}: expected 'word POS', got {line!r}") from e
            if tag not in ("N", "A", "V"):
                raise DataError(f"lexicon line {ln}: unknown tag {tag!r}")
            self.lexicon[word] = tag

    def tag(self, word: str) -> str | None:
        w = word.lower()
        if w in STOPWORDS or len(w) < 2:
            return None
        hit = self.lexicon.get(w)
        if hit is not None:
            return hit
        if w.endswith("ly"):
            return None
        if w.endswith("ing") and len(w) > 4:
            return "V"
        if w.endswith("ed") and len(w) > 3:
            return "V"
        if w.endswith(_NOUN_SUFFIXES):
            return "N"
        if w.endswith(_ADJ_SUFFIXES):
            return "A"
        if w.endswith("s") and len(w) > 3:
            stem = w[:-1]
            stem_tag = self.lexicon.get(stem)
            if stem_tag is not None:
                return stem_tag
            return "N"
        return "N"


_default_tagger: RuleTagger | None = None


def default_tagger() -> RuleTagger:
    global _default_tagger
    if _default_tagger is None:
        _default_tagger = RuleTagger()
    return _default_tagger
