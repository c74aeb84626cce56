"""Word boundary recovery in unsegmented tone streams.

Given a trained grammar, every way of wrapping the tone stream into
words (and, under a prominence-marking scheme, every prominence
assignment) yields one encoded symbol sequence; the decoder returns a
placement maximizing the chain-rule score.  Because predictions depend
on at most ``max_depth`` preceding symbols, dynamic programming over
(position, recent-symbol window) states searches the full candidate
space exactly; ``brute_force_segment`` enumerates it outright and is
the oracle the decoder is tested against.

Ties are broken deterministically: fewer words first, then the
lexicographically smallest boundary vector, then the smallest
prominence vector (all-plain preferred).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .core import EncodingScheme, Marker, Tone, TonosegError
from .grammar import PatternGrammar


class SegmentationError(TonosegError):
    """Segmentation preconditions violated (empty input, scheme mismatch...)."""


class SegmentCorpusError(TonosegError):
    """One or more turns failed; ``failures`` maps turn index to error."""

    def __init__(self, failures: list):
        self.failures = failures
        shown = "; ".join(f"turn {i}: {err}" for i, err in failures[:3])
        if len(failures) > 3:
            shown += f"; ... {len(failures) - 3} more"
        super().__init__(f"{len(failures)} turn(s) failed: {shown}")


class WordSpan(NamedTuple):
    start: int
    end: int
    prominent: bool


@dataclass(frozen=True)
class SegmentationResult:
    """Predicted word spans tiling the tone stream, plus the winning score."""

    spans: tuple[WordSpan, ...]
    log_prob: float

    def __post_init__(self):
        object.__setattr__(self, "spans", tuple(WordSpan(*s) for s in self.spans))
        pos = 0
        for span in self.spans:
            if span.start != pos or span.end <= span.start:
                raise SegmentationError(f"spans do not tile the stream: {self.spans}")
            pos = span.end

    @property
    def n_tones(self) -> int:
        return self.spans[-1].end if self.spans else 0

    def boundary_slots(self) -> tuple[bool, ...]:
        out = [False] * (self.n_tones - 1)
        for span in self.spans[:-1]:
            out[span.end - 1] = True
        return tuple(out)


def spans_to_symbols(tones: Sequence[Tone], spans: Sequence[WordSpan], scheme: EncodingScheme) -> list:
    """Encode a segmented tone stream as the scheme's symbol sequence."""
    out: list = [Marker.TURN_OPEN]
    for start, end, prominent in spans:
        out.append(scheme.word_open_symbol(prominent))
        out.extend(scheme.tone_symbol(t, prominent) for t in tones[start:end])
        out.append(Marker.WORD_CLOSE)
    out.append(Marker.TURN_CLOSE)
    return out


def _check_inputs(grammar: PatternGrammar, tones: Sequence[Tone], scheme: EncodingScheme):
    if not tones:
        raise SegmentationError("empty tone sequence")
    if not scheme.word_markers:
        raise SegmentationError(
            f"scheme {scheme.scheme_id!r} does not mark word boundaries; cannot segment"
        )
    if scheme != grammar.scheme:
        raise SegmentationError(
            f"scheme {scheme.scheme_id!r} does not match grammar scheme "
            f"{grammar.scheme.scheme_id!r}"
        )
    if grammar.config.smoothing <= 0:
        raise SegmentationError("segmentation requires positive smoothing")


def _prominence_options(scheme: EncodingScheme) -> tuple[bool, ...]:
    return (False, True) if scheme.prominence != "none" else (False,)


def _cached_scorer(grammar: PatternGrammar):
    """ln P(symbol | window) with per-call node and probability caches.

    Uses the exact arithmetic of ``PatternGrammar.log_prob`` so scores
    agree bitwise with ``sequence_log_probability``.
    """
    lam = grammar.config.smoothing
    size = grammar.scheme.size
    match = grammar._match
    node_cache: dict = {}
    lp_cache: dict = {}

    def lp(symbol, window: tuple) -> float:
        node = node_cache.get(window)
        if node is None:
            node = match(window)
            node_cache[window] = node
        key = (id(node), symbol)
        out = lp_cache.get(key)
        if out is None:
            denom = node.total + lam * size
            num = node.counts.get(symbol, 0) + lam
            out = math.log(num / denom)
            lp_cache[key] = out
        return out

    return lp


def enumerate_candidates(n_tones: int, scheme: EncodingScheme) -> Iterable[tuple[tuple, tuple]]:
    """All (boundary vector, prominence vector) candidates for a stream.

    The boundary vector has ``n_tones - 1`` slots; the prominence vector
    has one flag per word (always all-False when the scheme does not
    mark prominence).
    """
    options = _prominence_options(scheme)
    for bounds in product((False, True), repeat=n_tones - 1):
        n_words = sum(bounds) + 1
        for proms in product(options, repeat=n_words):
            yield bounds, proms


def _spans_from_vectors(bounds: tuple, proms: tuple) -> tuple[WordSpan, ...]:
    spans = []
    start = 0
    w = 0
    for i, cut in enumerate(bounds, start=1):
        if cut:
            spans.append(WordSpan(start, i, proms[w]))
            start = i
            w += 1
    spans.append(WordSpan(start, len(bounds) + 1, proms[w]))
    return tuple(spans)


def brute_force_segment(
    grammar: PatternGrammar, tones: Sequence[Tone], scheme: EncodingScheme
) -> SegmentationResult:
    """Score every candidate exhaustively and return the best one.

    Exponential in the stream length (and word count under prominence
    schemes); refuses streams longer than 14 tones.
    """
    _check_inputs(grammar, tones, scheme)
    n = len(tones)
    if n > 14:
        raise SegmentationError(f"brute force limited to 14 tones, got {n}")
    lp = _cached_scorer(grammar)
    depth = grammar.config.max_depth

    best_key = None
    best = None
    for bounds, proms in enumerate_candidates(n, scheme):
        spans = _spans_from_vectors(bounds, proms)
        symbols = spans_to_symbols(tones, spans, scheme)
        total = 0.0
        for i, sym in enumerate(symbols):
            total += lp(sym, tuple(symbols[max(0, i - depth) : i]))
        key = (-total, len(spans), bounds, proms)
        if best_key is None or key < best_key:
            best_key = key
            best = SegmentationResult(spans, total)
    return best


def segment_turn(
    grammar: PatternGrammar,
    tones: Sequence[Tone],
    scheme: EncodingScheme,
    beam_width: int | None = None,
) -> SegmentationResult:
    """Maximum-score boundary (and prominence) placement, by exact DP.

    A state is (recent-symbol window, current word's prominence); two
    partial candidates in the same state score all future symbols
    identically, so only the best prefix per state is kept.  Prefix
    scores accumulate symbol by symbol in emission order, which keeps
    them bitwise equal to ``sequence_log_probability`` of the same
    candidate.

    ``beam_width`` caps the number of states kept per position; the
    default (None) keeps them all, which is the exact search.  A beam
    can only trade optimality for speed on very long turns.
    """
    if beam_width is not None and beam_width < 1:
        raise SegmentationError(f"beam_width must be >= 1, got {beam_width}")
    _check_inputs(grammar, tones, scheme)
    tones = tuple(tones)
    n = len(tones)
    lp = _cached_scorer(grammar)
    depth = grammar.config.max_depth
    options = _prominence_options(scheme)

    def push(window: tuple, sym) -> tuple:
        if depth == 0:
            return ()
        return (window + (sym,))[-depth:]

    # state -> (log_prob, n_words, bounds_prefix, proms_prefix)
    # state = (window, current word prominent)
    states: dict = {}

    def offer(state, value):
        old = states.get(state)
        if old is None or _better(value, old):
            states[state] = value

    def _better(a, b) -> bool:
        if a[0] != b[0]:
            return a[0] > b[0]
        if a[1] != b[1]:
            return a[1] < b[1]
        if a[2] != b[2]:
            return a[2] < b[2]
        return a[3] < b[3]

    def clip(table: dict) -> dict:
        if beam_width is None or len(table) <= beam_width:
            return table
        ranked = sorted(
            table.items(), key=lambda kv: (-kv[1][0], kv[1][1], kv[1][2], kv[1][3])
        )
        return dict(ranked[:beam_width])

    # open the turn, the first word, and consume the first tone
    base_lp = lp(Marker.TURN_OPEN, ())
    w0 = push((), Marker.TURN_OPEN)
    for prom in options:
        open_sym = scheme.word_open_symbol(prom)
        lp1 = base_lp + lp(open_sym, w0)
        w1 = push(w0, open_sym)
        tone_sym = scheme.tone_symbol(tones[0], prom)
        lp2 = lp1 + lp(tone_sym, w1)
        offer((push(w1, tone_sym), prom), (lp2, 1, (), (prom,)))
    states = clip(states)

    for i in range(1, n):
        nxt: dict = {}

        def offer_next(state, value, nxt=nxt):
            old = nxt.get(state)
            if old is None or _better(value, old):
                nxt[state] = value

        for (window, prom), (score, words, bounds, proms) in states.items():
            # continue the current word
            tone_sym = scheme.tone_symbol(tones[i], prom)
            offer_next(
                (push(window, tone_sym), prom),
                (score + lp(tone_sym, window), words, bounds + (False,), proms),
            )
            # close it and open a new word
            s1 = score + lp(Marker.WORD_CLOSE, window)
            w1 = push(window, Marker.WORD_CLOSE)
            for new_prom in options:
                open_sym = scheme.word_open_symbol(new_prom)
                s2 = s1 + lp(open_sym, w1)
                w2 = push(w1, open_sym)
                tone_sym = scheme.tone_symbol(tones[i], new_prom)
                s3 = s2 + lp(tone_sym, w2)
                offer_next(
                    (push(w2, tone_sym), new_prom),
                    (s3, words + 1, bounds + (True,), proms + (new_prom,)),
                )
        states = clip(nxt)

    best = None
    for (window, _prom), (score, words, bounds, proms) in states.items():
        s1 = score + lp(Marker.WORD_CLOSE, window)
        total = s1 + lp(Marker.TURN_CLOSE, push(window, Marker.WORD_CLOSE))
        value = (total, words, bounds, proms)
        if best is None or _better(value, best):
            best = value
    total, _, bounds, proms = best
    return SegmentationResult(_spans_from_vectors(bounds, proms), total)


def segment_corpus(
    grammar: PatternGrammar,
    streams: Iterable[Sequence[Tone]],
    scheme: EncodingScheme,
    beam_width: int | None = None,
) -> list[SegmentationResult]:
    """Segment each turn's tone stream independently, order preserved.

    Collects per-turn failures and raises them together after the pass.
    """
    results: list[SegmentationResult] = []
    failures: list = []
    for i, stream in enumerate(streams):
        try:
            results.append(segment_turn(grammar, stream, scheme, beam_width=beam_width))
        except TonosegError as err:
            failures.append((i, err))
    if failures:
        raise SegmentCorpusError(failures)
    return results
