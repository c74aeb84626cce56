#!/usr/bin/env python3
# End-to-end boundary prediction: train on a synthetic corpus, strip the
# word boundaries from held-out turns, let the Viterbi decoder put them
# back, and score the result against the reference.

from tonoseg import (
    HIERARCHICAL,
    PlantedGrammar,
    TrainConfig,
    baseline_segment,
    confusion,
    encode_corpus,
    format_report_table,
    metrics,
    sample_corpus,
    segment_corpus,
    segment_turn,
    train,
)
from tonoseg.core import Tone

# Words end in LOWER most of the time, but not always: the boundary cue
# is informative, not deterministic, so the task is non-trivial.
planted = PlantedGrammar(
    word_lengths=((1, 0.2), (2, 0.5), (3, 0.3)),
    interior_tones=((Tone.TOP, 0.3), (Tone.HIGHER, 0.4), (Tone.UPSTEP, 0.3)),
    final_tones=((Tone.LOWER, 0.8), (Tone.SAME, 0.2)),
    turn_lengths=((2, 0.4), (3, 0.4), (4, 0.2)),
    seed=1,
)
training = sample_corpus(planted, 4000, seed=11)
held_out = sample_corpus(planted, 800, seed=22)

grammar = train(encode_corpus(training, HIERARCHICAL), HIERARCHICAL, TrainConfig())
print(f"trained on {training.word_count} words "
      f"({grammar.total_symbols} symbols, {grammar.node_count} contexts kept)")

# one turn in detail
turn = held_out.turns[0]
stream = turn.tone_stream()
result = segment_turn(grammar, stream, HIERARCHICAL)
print()
print("tone stream:   ", " ".join(str(t) for t in stream))
print("true words:    ", " | ".join(" ".join(str(t) for t in w.tones) for w in turn.words))
print("predicted:     ", " | ".join(" ".join(str(t) for t in stream[s.start:s.end]) for s in result.spans))
print(f"decoder score: {result.log_prob:.3f} (log-probability of the winning encoding)")

# the whole held-out set
streams = [t.tone_stream() for t in held_out.turns]
predicted = segment_corpus(grammar, streams, HIERARCHICAL)
report = metrics(confusion(held_out, predicted))
print()
print(f"held-out evaluation over {held_out.word_count} words:")
print()
print(format_report_table(report))

print("baselines on the same streams:")
for label, kwargs in (
    ("boundary everywhere", dict(strategy="all")),
    ("no boundaries", dict(strategy="none")),
    ("coin flip p=0.5", dict(strategy="random", p=0.5, seed=7)),
):
    rep = metrics(confusion(held_out, baseline_segment(streams, **kwargs)))
    print(f"  {label:20s} P={rep.precision:.3f} R={rep.recall:.3f} F={rep.f_measure:.3f}")
