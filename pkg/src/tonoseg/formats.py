"""Text formats: corpus files, model files, segmentation files.

All formats are line oriented, UTF-8, with ``#`` comment lines ignored.
Corpus files open with ``tonoseg-corpus v1`` and hold one turn per
line, each word bracketed and prominent words starred::

    tonoseg-corpus v1
    @speaker f01
    ( U S ) *( T D )

Model files open with ``tonoseg-model v1``, then the scheme id, the
training configuration, and one line per trie node: the context
symbols (``.`` for the root) followed by the successor counts in
alphabet order.  Segmentation files carry one turn per line as
``start-end`` spans, ``*``-suffixed when prominent.
"""

from __future__ import annotations

import math
import re

from .core import (
    Corpus,
    EmptyWordError,
    PositionedError,
    ProsodicWord,
    Tone,
    TonosegError,
    Turn,
    UnknownToneError,
    get_scheme,
    symbol_from_token,
)
from .grammar import PatternGrammar, TrainConfig
from .segment import SegmentationResult, WordSpan

CORPUS_HEADER = "tonoseg-corpus v1"
MODEL_HEADER = "tonoseg-model v1"


class CorpusFormatError(PositionedError):
    """Base for positioned corpus-file errors."""


class VersionError(CorpusFormatError):
    """Missing or unrecognized format header."""


class NestingError(CorpusFormatError):
    """Brackets do not nest into turn > word > tones."""


class SegmentationFormatError(PositionedError):
    """Malformed segmentation file."""


class ModelFormatError(TonosegError):
    """Base for model-file errors."""


class CorruptModelError(ModelFormatError):
    """Model document truncated or internally inconsistent."""


class SchemeMismatchError(ModelFormatError):
    """Model scheme id unknown or different from the one requested."""


_TOKEN = re.compile(r"\S+")
_TONE_LETTERS = frozenset(t.value for t in Tone)


def _content_lines(text: str):
    """(line_no, line) pairs with comments and blank lines dropped."""
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield i, line


def parse_corpus(text: str) -> Corpus:
    """Parse a corpus document; the first error is reported with its
    1-based line and column."""
    lines = _content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise VersionError(f"missing header {CORPUS_HEADER!r}", 1, 1) from None
    if header.strip() != CORPUS_HEADER:
        raise VersionError(f"expected header {CORPUS_HEADER!r}, got {header.strip()!r}", line_no, 1)

    turns = []
    metadata: dict = {}
    for line_no, line in lines:
        if line.lstrip().startswith("@"):
            body = line.strip()[1:]
            key, _, value = body.partition(" ")
            if not key:
                raise CorpusFormatError("metadata line has no key", line_no, 1)
            metadata[key] = value.strip()
            continue
        turns.append(_parse_turn_line(line, line_no))
    return Corpus(tuple(turns), metadata)


def _parse_turn_line(line: str, line_no: int) -> Turn:
    words = []
    tones: list[Tone] = []
    prominent = False
    in_word = False
    for m in _TOKEN.finditer(line):
        token, col = m.group(), m.start() + 1
        if token in ("(", "*("):
            if in_word:
                raise NestingError("word opened inside a word", line_no, col)
            in_word = True
            prominent = token == "*("
            tones = []
        elif token == ")":
            if not in_word:
                raise NestingError("')' without matching open", line_no, col)
            if not tones:
                raise EmptyWordError("word contains no tones", line_no, col)
            words.append(ProsodicWord(tuple(tones), prominent))
            in_word = False
        elif in_word:
            if token not in _TONE_LETTERS:
                raise UnknownToneError(f"unknown tone letter {token!r}", line_no, col)
            tones.append(Tone(token))
        else:
            raise NestingError(f"token {token!r} outside a word", line_no, col)
    if in_word:
        raise NestingError("unclosed word at end of line", line_no, len(line))
    return Turn(tuple(words))


def serialize_corpus(corpus: Corpus) -> str:
    """Deterministic inverse of ``parse_corpus``: metadata sorted by key,
    one turn per line."""
    out = [CORPUS_HEADER]
    for key in sorted(corpus.metadata):
        value = corpus.metadata[key]
        if not re.fullmatch(r"\S+", key):
            raise TonosegError(f"metadata key {key!r} must be a single token")
        if "\n" in value or value != value.strip():
            raise TonosegError(f"metadata value for {key!r} must be a single trimmed line")
        out.append(f"@{key} {value}".rstrip())
    for turn in corpus.turns:
        words = []
        for w in turn.words:
            opener = "*(" if w.prominent else "("
            words.append(f"{opener} {' '.join(str(t) for t in w.tones)} )")
        out.append(" ".join(words))
    return "\n".join(out) + "\n"


def save_model(grammar: PatternGrammar) -> str:
    """Serialize a grammar with raw counts; smoothing applies on load."""
    cfg = grammar.config
    out = [
        MODEL_HEADER,
        f"scheme {grammar.scheme.scheme_id}",
        f"config {cfg.max_depth} {cfg.min_count} {cfg.smoothing!r}",
    ]
    alphabet = grammar.scheme.alphabet
    for context, counts in grammar.iter_counts():
        ctx = " ".join(str(s) for s in context) if context else "."
        row = " ".join(str(counts.get(s, 0)) for s in alphabet)
        out.append(f"{ctx} {row}")
    return "\n".join(out) + "\n"


def load_model(text: str, expected_scheme: str | None = None) -> PatternGrammar:
    """Rebuild a grammar from ``save_model`` output.

    ``expected_scheme`` pins the scheme id the caller requires; a
    different id in the document raises ``SchemeMismatchError``.
    """
    lines = _content_lines(text)

    def next_line(what):
        try:
            return next(lines)
        except StopIteration:
            raise CorruptModelError(f"document truncated: missing {what}") from None

    line_no, header = next_line("header")
    if header.strip() != MODEL_HEADER:
        raise VersionError(f"expected header {MODEL_HEADER!r}, got {header.strip()!r}", line_no, 1)

    _, scheme_line = next_line("scheme line")
    parts = scheme_line.split()
    if len(parts) != 2 or parts[0] != "scheme":
        raise CorruptModelError(f"bad scheme line {scheme_line.strip()!r}")
    scheme_id = parts[1]
    if expected_scheme is not None and scheme_id != expected_scheme:
        raise SchemeMismatchError(f"model scheme {scheme_id!r}, expected {expected_scheme!r}")
    try:
        scheme = get_scheme(scheme_id)
    except KeyError as err:
        raise SchemeMismatchError(str(err)) from None

    _, config_line = next_line("config line")
    parts = config_line.split()
    if len(parts) != 4 or parts[0] != "config":
        raise CorruptModelError(f"bad config line {config_line.strip()!r}")
    try:
        config = TrainConfig(int(parts[1]), int(parts[2]), float(parts[3]))
    except ValueError as err:
        raise CorruptModelError(f"bad config values: {err}") from None

    n = scheme.size
    items = []
    for line_no, line in lines:
        tokens = line.split()
        if len(tokens) < n + 1:
            raise CorruptModelError(f"line {line_no}: node line needs context plus {n} counts")
        ctx_tokens, count_tokens = tokens[:-n], tokens[-n:]
        try:
            counts = [int(t) for t in count_tokens]
        except ValueError:
            raise CorruptModelError(f"line {line_no}: non-integer count") from None
        if any(c < 0 for c in counts):
            raise CorruptModelError(f"line {line_no}: negative count")
        if ctx_tokens == ["."]:
            context: tuple = ()
        else:
            try:
                context = tuple(symbol_from_token(t, scheme) for t in ctx_tokens)
            except TonosegError as err:
                raise CorruptModelError(f"line {line_no}: {err}") from None
        items.append((context, dict(zip(scheme.alphabet, counts))))
    if not items or items[0][0] != ():
        raise CorruptModelError("document has no root node")
    try:
        return PatternGrammar.from_counts(scheme, config, items)
    except TonosegError as err:
        if isinstance(err, ModelFormatError):
            raise
        raise CorruptModelError(str(err)) from None


_SPAN = re.compile(r"^(\d+)-(\d+)(\*?)$")


def serialize_segmentation(results) -> str:
    """One line per turn; each word as ``start-end``, ``*`` if prominent."""
    out = []
    for r in results:
        out.append(" ".join(f"{s.start}-{s.end}{'*' if s.prominent else ''}" for s in r.spans))
    return "\n".join(out) + "\n" if out else ""


def parse_segmentation(text: str) -> list[SegmentationResult]:
    """Inverse of ``serialize_segmentation``; scores are not stored in the
    file, so results carry NaN log-probabilities."""
    results = []
    for line_no, line in _content_lines(text):
        spans = []
        for m in _TOKEN.finditer(line):
            token, col = m.group(), m.start() + 1
            sm = _SPAN.match(token)
            if not sm:
                raise SegmentationFormatError(f"bad span token {token!r}", line_no, col)
            spans.append(WordSpan(int(sm.group(1)), int(sm.group(2)), sm.group(3) == "*"))
        try:
            results.append(SegmentationResult(tuple(spans), math.nan))
        except TonosegError as err:
            raise SegmentationFormatError(str(err), line_no, 1) from None
    return results
