#!/usr/bin/env python3
# Tour of the domain types: the eight-tone alphabet, the turn > word
# hierarchy, and the three ways a turn is linearized into symbols.

from tonoseg import (
    FLAT,
    HIERARCHICAL,
    HIERARCHY_PROMINENCE,
    ProsodicWord,
    Tone,
    Turn,
    decode_turn,
    encode_turn,
    parse_corpus,
    serialize_corpus,
)

print("The tone alphabet")
print("-----------------")
for tone in Tone:
    kind = "absolute" if tone.is_absolute else (
        "relative, iterative" if tone.is_iterative else "relative"
    )
    print(f"  {tone.value}  {tone.name.lower():9s} ({kind})")

# A two-word turn: "U S" then a prominent "T D".
turn = Turn((
    ProsodicWord((Tone.UPSTEP, Tone.SAME)),
    ProsodicWord((Tone.TOP, Tone.DOWNSTEP), prominent=True),
))

print()
print("One turn under the three encoding schemes")
print("------------------------------------------")
for scheme in (FLAT, HIERARCHICAL, HIERARCHY_PROMINENCE):
    symbols = encode_turn(turn, scheme)
    print(f"  {scheme.scheme_id:10s} (N={scheme.size:2d}):  {' '.join(str(s) for s in symbols)}")

print()
print("The word-marking encodings are invertible:")
roundtrip = decode_turn(encode_turn(turn, HIERARCHY_PROMINENCE), HIERARCHY_PROMINENCE)
print(f"  decode(encode(turn)) == turn  ->  {roundtrip == turn}")

print()
print("The corpus text format uses the same brackets, one turn per line:")
corpus_text = serialize_corpus(parse_corpus(
    "tonoseg-corpus v1\n"
    "( U S ) *( T D )\n"
    "( H ) ( M B )\n"
))
print("  " + "\n  ".join(corpus_text.splitlines()))
