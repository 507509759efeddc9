"""Word segmentation, POS tagging and keyword extraction for Vietnamese
question text.

Segmentation builds a lattice over the syllable sequence whose arcs are
dictionary words plus penalized single-syllable fallback arcs, and picks
the maximum-score path (sum of arc log-frequencies). Question-word
phrases are pinned greedily at the sentence tail, and runs of capitalized
out-of-dictionary syllables merge into proper-noun tokens.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigError

DEFAULT_UNKNOWN_PENALTY = -10.0


class Tag(str, Enum):
    N = "N"    # common noun
    Np = "Np"  # proper noun
    V = "V"    # verb
    A = "A"    # adjective
    E = "E"    # preposition
    P = "P"    # pronoun
    QW = "QW"  # question word
    M = "M"    # numeral / quantifier
    C = "C"    # conjunction
    X = "X"    # other (incl. punctuation)


@dataclass
class LexiconEntry:
    # per-tag log frequency, in file order; a word's segmentation score is
    # the best of its tag frequencies
    tags: dict[Tag, float] = field(default_factory=dict)

    @property
    def log_frequency(self) -> float:
        return max(self.tags.values())

    def best_tag(self) -> Tag:
        best = None
        for tag, freq in self.tags.items():
            if best is None or freq > self.tags[best]:
                best = tag
        return best


class Lexicon:
    """Dictionary of words (syllables joined by single spaces) with tags."""

    def __init__(self, unknown_penalty: float = DEFAULT_UNKNOWN_PENALTY):
        self.entries: dict[str, LexiconEntry] = {}
        self.unknown_penalty = unknown_penalty
        self.max_syllables = 1

    def add(self, word: str, tags, log_frequency: float) -> None:
        word = _nfc(word).casefold()
        if not word:
            raise ConfigError("empty lexicon word")
        tags = list(tags)
        if not tags:
            raise ConfigError(f"lexicon word needs at least one tag: {word}")
        entry = self.entries.setdefault(word, LexiconEntry())
        for tag in tags:
            entry.tags[Tag(tag)] = float(log_frequency)
        self.max_syllables = max(self.max_syllables, word.count(" ") + 1)

    def lookup(self, word: str) -> LexiconEntry | None:
        return self.entries.get(_nfc(word).casefold())

    def __contains__(self, word: str) -> bool:
        return self.lookup(word) is not None

    @classmethod
    def load(cls, path, unknown_penalty: float = DEFAULT_UNKNOWN_PENALTY) -> "Lexicon":
        """Load ``word<TAB>tag1,tag2<TAB>logfreq`` lines; repeated words merge."""
        lexicon = cls(unknown_penalty)
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ConfigError(f"{path}:{lineno}: expected 3 tab-separated fields")
                word, tags, freq = parts
                try:
                    lexicon.add(word, [t.strip() for t in tags.split(",")], float(freq))
                except (ValueError, KeyError) as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from exc
        return lexicon


@dataclass(frozen=True)
class Token:
    surface: str  # syllables joined by underscore
    span: tuple[int, int]  # half-open syllable range

    @property
    def syllable_count(self) -> int:
        return self.span[1] - self.span[0]


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: Tag

    @property
    def surface(self) -> str:
        return self.token.surface


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _is_punct(text: str) -> bool:
    return bool(text) and all(unicodedata.category(ch).startswith("P") for ch in text)


def split_syllables(text: str, lexicon: Lexicon | None = None) -> list[str]:
    """Whitespace-split into syllables, peeling punctuation off token edges.

    A token that is itself a lexicon entry (e.g. an abbreviation with a
    trailing dot) is kept intact.
    """
    syllables: list[str] = []
    for raw in _nfc(text).split():
        if lexicon is not None and raw in lexicon:
            syllables.append(raw)
            continue
        lead: list[str] = []
        while raw and _is_punct(raw[0]):
            lead.append(raw[0])
            raw = raw[1:]
        trail: list[str] = []
        while raw and _is_punct(raw[-1]):
            if lexicon is not None and raw in lexicon:
                break
            trail.append(raw[-1])
            raw = raw[:-1]
        syllables.extend(lead)
        if raw:
            syllables.append(raw)
        syllables.extend(reversed(trail))
    return syllables


def _word_of(syllables: list[str], start: int, end: int) -> str:
    return " ".join(s.casefold() for s in syllables[start:end])


def _best_path(syllables: list[str], lexicon: Lexicon) -> tuple[list[tuple[int, int, bool]], float]:
    """Maximum-score tiling of ``syllables`` by lexicon arcs and fallback arcs.

    Returns (arcs, score) where each arc is (start, end, is_fallback).
    Ties resolve to fewer tokens, then leftmost-longest.
    """
    n = len(syllables)
    # best[i]: (score, token_count, next_boundary, is_fallback) for suffix i..n
    best: list[tuple[float, int, int, bool] | None] = [None] * (n + 1)
    best[n] = (0.0, 0, n, False)
    for i in range(n - 1, -1, -1):
        choice = None
        upper = min(n, i + lexicon.max_syllables)
        for j in range(i + 1, upper + 1):
            entry = lexicon.lookup(_word_of(syllables, i, j))
            if entry is None:
                continue
            tail = best[j]
            candidate = (entry.log_frequency + tail[0], tail[1] + 1, j, False)
            if choice is None or _better(candidate, choice):
                choice = candidate
        tail = best[i + 1]
        fallback = (lexicon.unknown_penalty + tail[0], tail[1] + 1, i + 1, True)
        if choice is None or _better(fallback, choice):
            choice = fallback
        best[i] = choice
    arcs: list[tuple[int, int, bool]] = []
    i = 0
    while i < n:
        _, _, j, is_fallback = best[i]
        arcs.append((i, j, is_fallback))
        i = j
    return arcs, best[0][0]


def _better(a: tuple, b: tuple) -> bool:
    # higher score, then fewer tokens, then longer first arc (leftmost-longest)
    return (a[0], -a[1], a[2]) > (b[0], -b[1], b[2])


def segment_scored(text: str, lexicon: Lexicon) -> tuple[list[Token], float]:
    """Segment and also report the lattice path score (fallback arcs count
    the unknown-word penalty each)."""
    syllables = split_syllables(text, lexicon)
    if not syllables:
        return [], 0.0

    end = len(syllables)
    while end > 0 and _is_punct(syllables[end - 1]):
        end -= 1

    # pin the longest question-word phrase ending at the last word syllable
    qw_start = None
    for length in range(min(lexicon.max_syllables, end), 0, -1):
        entry = lexicon.lookup(_word_of(syllables, end - length, end))
        if entry is not None and Tag.QW in entry.tags:
            qw_start = end - length
            break

    core_end = qw_start if qw_start is not None else end
    arcs, score = _best_path(syllables[:core_end], lexicon)

    # merge runs of capitalized out-of-lexicon syllables into proper nouns
    merged: list[tuple[int, int, bool]] = []
    for arc in arcs:
        start, stop, is_fallback = arc
        mergeable = is_fallback and syllables[start][:1].isupper()
        if mergeable and merged:
            prev_start, prev_stop, prev_merge = merged[-1]
            if prev_merge and prev_stop == start:
                merged[-1] = (prev_start, stop, True)
                continue
        merged.append((start, stop, mergeable))

    tokens = [
        Token("_".join(syllables[start:stop]), (start, stop)) for start, stop, _ in merged
    ]
    if qw_start is not None:
        tokens.append(Token("_".join(syllables[qw_start:end]), (qw_start, end)))
        entry = lexicon.lookup(_word_of(syllables, qw_start, end))
        score += entry.log_frequency
    for i in range(end, len(syllables)):
        tokens.append(Token(syllables[i], (i, i + 1)))
        score += lexicon.unknown_penalty
    return tokens, score


def segment(text: str, lexicon: Lexicon) -> list[Token]:
    return segment_scored(text, lexicon)[0]


def tag(tokens: list[Token], lexicon: Lexicon) -> list[TaggedToken]:
    """Decision cascade: punctuation → X; lexicon words take their only or
    highest-frequency tag; capitalized unknowns → Np; the rest → N."""
    tagged: list[TaggedToken] = []
    for token in tokens:
        if _is_punct(token.surface):
            tagged.append(TaggedToken(token, Tag.X))
            continue
        entry = lexicon.lookup(token.surface.replace("_", " "))
        if entry is not None:
            tagged.append(TaggedToken(token, entry.best_tag()))
        elif token.surface[:1].isupper():
            tagged.append(TaggedToken(token, Tag.Np))
        else:
            tagged.append(TaggedToken(token, Tag.N))
    return tagged


DROPPED_TAGS = {Tag.E, Tag.C, Tag.X, Tag.QW}


def load_stoplist(path) -> set[str]:
    with open(path, encoding="utf-8") as handle:
        return {
            _nfc(line.strip()).casefold()
            for line in handle
            if line.strip() and not line.startswith("#")
        }


def extract_keywords(tagged: list[TaggedToken], stoplist: set[str]) -> list[TaggedToken]:
    """Strip stop words, question words, prepositions, conjunctions and
    punctuation; keeps question order."""
    return [
        tt
        for tt in tagged
        if tt.tag not in DROPPED_TAGS and tt.surface.casefold() not in stoplist
    ]
