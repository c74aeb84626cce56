"""Variable-length-context probabilistic grammar over symbol sequences.

Frequent left contexts (up to a configurable depth) are stored in a
suffix trie together with their successor counts; prediction finds the
longest stored suffix of the history and applies add-lambda smoothing
at that node.  Chain-rule sequence scores and entropy measures (with
and without the grammar) are built on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import AlphabetError, EncodingScheme, TonosegError


@dataclass(frozen=True)
class TrainConfig:
    """Training knobs: context depth, retention threshold, smoothing.

    ``max_depth=0`` degenerates to a unigram model.  ``min_count`` is the
    number of observed (context, successor) events a context needs to be
    retained.  ``smoothing`` is the add-lambda constant applied to
    successor counts at prediction time.
    """

    max_depth: int = 4
    min_count: int = 2
    smoothing: float = 0.5

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")
        if self.min_count < 1:
            raise ValueError(f"min_count must be >= 1, got {self.min_count}")
        if self.smoothing < 0:
            raise ValueError(f"smoothing must be >= 0, got {self.smoothing}")


class _Node:
    __slots__ = ("counts", "children", "total")

    def __init__(self):
        self.counts: dict = {}
        self.children: dict = {}
        self.total = 0

    def add(self, successor):
        self.counts[successor] = self.counts.get(successor, 0) + 1
        self.total += 1


class PatternGrammar:
    """Trained context trie bound to a scheme and a training config.

    Immutable once trained; queries are safe from any number of threads.
    """

    def __init__(self, scheme: EncodingScheme, config: TrainConfig, root: _Node | None = None):
        self.scheme = scheme
        self.config = config
        self._root = root if root is not None else _Node()

    # -- structure ----------------------------------------------------

    @property
    def total_symbols(self) -> int:
        """Number of symbol positions seen in training (root tally)."""
        return self._root.total

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.iter_counts())

    def iter_counts(self) -> Iterator[tuple[tuple, dict]]:
        """Yield (context, successor-counts) per retained node.

        Contexts are in chronological order (oldest symbol first) and the
        iteration order is deterministic: depth first by alphabet rank.
        """
        order = {s: i for i, s in enumerate(self.scheme.alphabet)}

        def walk(node, context):
            yield context, node.counts
            for sym in sorted(node.children, key=order.__getitem__):
                yield from walk(node.children[sym], (sym,) + context)

        yield from walk(self._root, ())

    def context_retained(self, context: Sequence) -> bool:
        node = self._root
        for sym in reversed(tuple(context)):
            node = node.children.get(sym)
            if node is None:
                return False
        return True

    @classmethod
    def from_counts(
        cls,
        scheme: EncodingScheme,
        config: TrainConfig,
        items: Iterable[tuple[tuple, dict]],
    ) -> "PatternGrammar":
        """Rebuild a grammar from (context, successor-counts) pairs.

        Every non-root context's one-shorter suffix must already be
        present (suffix closure); violations raise ``TonosegError``.
        """
        root = _Node()
        for context, counts in items:
            if len(context) > config.max_depth:
                raise TonosegError(
                    f"context {context!r} longer than max_depth={config.max_depth}"
                )
            node = root
            for depth, sym in enumerate(reversed(tuple(context))):
                if sym not in scheme:
                    raise AlphabetError(f"context symbol {sym!r} not in scheme alphabet")
                child = node.children.get(sym)
                if child is None:
                    if depth != len(context) - 1:
                        raise TonosegError(
                            f"context {context!r} lacks its suffix; trie not suffix-closed"
                        )
                    child = _Node()
                    node.children[sym] = child
                node = child
            if node.counts:
                raise TonosegError(f"duplicate context {context!r}")
            for sym, c in counts.items():
                if sym not in scheme:
                    raise AlphabetError(f"successor {sym!r} not in scheme alphabet")
                if c < 0:
                    raise TonosegError(f"negative count for {sym!r} in context {context!r}")
                if c:
                    node.counts[sym] = c
                    node.total += c
        return cls(scheme, config, root)

    # -- prediction ---------------------------------------------------

    def _match(self, context: Sequence) -> _Node:
        """Longest retained suffix of the context; the root always matches."""
        node = self._root
        n = len(context)
        for j in range(n - 1, -1, -1):
            nxt = node.children.get(context[j])
            if nxt is None:
                break
            node = nxt
        return node

    def conditional(self, context: Sequence) -> np.ndarray:
        """Smoothed successor distribution over the alphabet, in order.

        Only the last ``max_depth`` context symbols can matter.  With a
        positive smoothing constant the result is strictly positive.
        """
        node = self._match(context)
        lam = self.config.smoothing
        denom = node.total + lam * self.scheme.size
        if denom == 0:
            raise TonosegError("no counts at matched context and smoothing is zero")
        vec = np.full(self.scheme.size, lam / denom)
        for sym, c in node.counts.items():
            vec[self.scheme.index(sym)] += c / denom
        return vec

    def log_prob(self, symbol, context: Sequence) -> float:
        """ln P(symbol | context); -inf when unsmoothed and unseen."""
        if symbol not in self.scheme:
            raise AlphabetError(f"symbol {symbol!r} not in scheme alphabet")
        node = self._match(context)
        lam = self.config.smoothing
        denom = node.total + lam * self.scheme.size
        if denom == 0:
            raise TonosegError("no counts at matched context and smoothing is zero")
        num = node.counts.get(symbol, 0) + lam
        if num == 0:
            return -math.inf
        return math.log(num / denom)

    def sequence_log_probability(self, symbols: Sequence) -> float:
        """Natural-log chain-rule probability of one symbol sequence.

        Histories never cross the sequence boundary: the first symbol is
        predicted from the empty context.  Returns -inf if an unseen
        transition meets zero smoothing.
        """
        total = 0.0
        for i in range(len(symbols)):
            lp = self.log_prob(symbols[i], symbols[max(0, i - self.config.max_depth) : i])
            if lp == -math.inf:
                return -math.inf
            total += lp
        return total


def train(
    sequences: Iterable[Sequence],
    scheme: EncodingScheme,
    config: TrainConfig | None = None,
) -> PatternGrammar:
    """Tally (context, successor) events and prune rare contexts.

    For every position the successor is counted under all context
    suffixes up to ``max_depth`` symbols long (never reaching across the
    start of the sequence).  Contexts observed fewer than ``min_count``
    times are removed; removal takes the whole subtree with it, so the
    trie stays suffix-closed.
    """
    if config is None:
        config = TrainConfig()
    root = _Node()
    depth = config.max_depth
    allowed = {s: None for s in scheme.alphabet}
    for si, seq in enumerate(sequences):
        for pos, successor in enumerate(seq):
            if successor not in allowed:
                raise AlphabetError(
                    f"sequence {si}, position {pos}: symbol {successor!r} "
                    f"not in alphabet of scheme {scheme.scheme_id!r}"
                )
            node = root
            node.add(successor)
            for back in range(1, min(pos, depth) + 1):
                sym = seq[pos - back]
                child = node.children.get(sym)
                if child is None:
                    child = _Node()
                    node.children[sym] = child
                node = child
                node.add(successor)

    def prune(node):
        node.children = {
            sym: child
            for sym, child in node.children.items()
            if child.total >= config.min_count
        }
        for child in node.children.values():
            prune(child)

    prune(root)
    return PatternGrammar(scheme, config, root)


def marginal_entropy(sequences: Iterable[Sequence], n_categories: int) -> tuple[float, float]:
    """Entropy of the empirical unigram distribution, and its value
    normalized by ln(n_categories).

    0 * ln 0 counts as 0; the result is 0 for a deterministic stream and
    ln(n_categories) for an equiprobable one.
    """
    if n_categories < 2:
        raise ValueError(f"n_categories must be >= 2, got {n_categories}")
    counts: dict = {}
    total = 0
    for seq in sequences:
        for sym in seq:
            counts[sym] = counts.get(sym, 0) + 1
            total += 1
    if total == 0:
        raise ValueError("cannot measure entropy of an empty symbol stream")
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log(p)
    return h, h / math.log(n_categories)


def model_entropy(
    grammar: PatternGrammar,
    sequences: Iterable[Sequence],
    n_categories: int | None = None,
) -> tuple[float, float]:
    """Per-symbol cross-entropy of the data under the grammar.

    Averages -ln P(symbol | history) over every position of every
    sequence, each sequence starting from the empty context.  With
    ``max_depth=0`` and zero smoothing this equals the marginal entropy
    of the same data.
    """
    if n_categories is None:
        n_categories = grammar.scheme.size
    if n_categories < 2:
        raise ValueError(f"n_categories must be >= 2, got {n_categories}")
    depth = grammar.config.max_depth
    total = 0.0
    positions = 0
    for si, seq in enumerate(sequences):
        for i in range(len(seq)):
            lp = grammar.log_prob(seq[i], seq[max(0, i - depth) : i])
            if lp == -math.inf:
                raise TonosegError(
                    f"sequence {si}, position {i}: unseen transition with zero smoothing"
                )
            total -= lp
            positions += 1
    if positions == 0:
        raise ValueError("cannot measure entropy of an empty symbol stream")
    h = total / positions
    return h, h / math.log(n_categories)


def normalized_entropy(h: float, n_categories: int, tolerance: float = 1e-9) -> float:
    """Map an entropy in [0, ln N] onto [0, 1]."""
    if n_categories < 2:
        raise ValueError(f"n_categories must be >= 2, got {n_categories}")
    hmax = math.log(n_categories)
    if h < -tolerance or h > hmax + tolerance:
        raise ValueError(f"entropy {h} outside [0, {hmax:.6f}] for {n_categories} categories")
    return min(max(h, 0.0), hmax) / hmax
