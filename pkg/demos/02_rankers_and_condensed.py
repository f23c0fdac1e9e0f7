#!/usr/bin/env python3
"""Walkthrough: ranker evaluation and the condensed (zooming) semantics.

A ranker is a sequence of instructions "Xa: go to the next a" and
"Ya: go to the previous a", executed left to right.  It is condensed on a
word when the run zooms monotonically inward, never landing on or beyond a
previously visited position.
"""

from fo2level import (eval_ranker, is_condensed, is_condensed_no_overrun,
                      parse_ranker, ranker_positions)

r = parse_ranker("Xa Yb Xc")
for word in ["bca", "bac", "cabc", "bcba"]:
    pos = eval_ranker(r, word)
    trace = ranker_positions(r, word)
    print(f"{r} on {word!r}:")
    print(f"    visited positions: {trace}")
    if pos is None:
        print("    undefined (some instruction found nothing)")
    else:
        print(f"    defines position {pos}; condensed: {is_condensed(r, word)}")
    print()

# a run that lands exactly on an already-visited position is not condensed
r2 = parse_ranker("Xb Ya Xb")
print(f"{r2} on 'ab': trace {ranker_positions(r2, 'ab')}, "
      f"condensed: {is_condensed(r2, 'ab')} (revisits position 2)")

# the two formulations of condensedness coincide
SAMPLES = ["ab", "abba", "bda", "abcabc", "bbaab"]
for word in SAMPLES:
    for text in ["Xa Yb", "Xa Yb Xa", "Xb Xa Yb", "Ya Xb Yc"]:
        rk = parse_ranker(text)
        assert is_condensed(rk, word) == is_condensed_no_overrun(rk, word)
print("\ninterval-chain and no-overrun semantics agree on all samples")
