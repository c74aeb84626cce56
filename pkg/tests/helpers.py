"""Shared builders for randomized tests (everything seeded, no globals)."""

from __future__ import annotations

import random

from tonoseg.core import Corpus, ProsodicWord, Tone, Turn
from tonoseg.synth import PlantedGrammar

TONES = list(Tone)


def word(letters: str, prominent: bool = False) -> ProsodicWord:
    return ProsodicWord(tuple(Tone(c) for c in letters), prominent)


def turn(*specs) -> Turn:
    """turn("US", ("TD", True)) -> two-word turn, second prominent."""
    words = []
    for spec in specs:
        if isinstance(spec, str):
            words.append(word(spec))
        else:
            words.append(word(spec[0], spec[1]))
    return Turn(tuple(words))


def random_turn(rng: random.Random, max_words: int = 4, max_tones: int = 4) -> Turn:
    words = []
    for _ in range(rng.randint(1, max_words)):
        tones = tuple(rng.choice(TONES) for _ in range(rng.randint(1, max_tones)))
        words.append(ProsodicWord(tones, rng.random() < 0.3))
    return Turn(tuple(words))


def random_corpus(rng: random.Random, n_turns: int, **kwargs) -> Corpus:
    return Corpus(tuple(random_turn(rng, **kwargs) for _ in range(n_turns)))


def random_dist(rng: random.Random, values, k: int):
    """k-point distribution over a sample of values, probabilities summing
    to 1 exactly enough for PlantedGrammar validation."""
    vals = rng.sample(list(values), k)
    weights = [rng.random() + 0.1 for _ in vals]
    s = sum(weights)
    return tuple((v, w / s) for v, w in zip(vals, weights))


def random_planted(rng: random.Random, prominence: float | None = None) -> PlantedGrammar:
    return PlantedGrammar(
        word_lengths=random_dist(rng, [1, 2, 3, 4], rng.randint(2, 3)),
        interior_tones=random_dist(rng, TONES, rng.randint(2, 4)),
        final_tones=random_dist(rng, TONES, rng.randint(1, 3)),
        turn_lengths=random_dist(rng, [1, 2, 3], 2),
        prominence=rng.choice([0.0, 0.2, 0.5]) if prominence is None else prominence,
        seed=rng.randrange(1 << 30),
    )
