#!/usr/bin/env python3
"""Walkthrough: ranker equivalence refining the word morphism.

For a language of alternation depth m there is some depth n at which the
ranker-equivalence classes (m blocks, depth n) separate every pair of
words with different syntactic-monoid images.  The oracle enumerates all
short words, partitions them by equivalence signature, and checks the
morphism is constant on each class, reporting the first violating pair
otherwise.
"""

from fo2level import (RankerTable, all_words, fo2_level,
                      oracle_equiv_refines_morphism, parse_regex,
                      regex_to_min_dfa, transition_monoid)

for regex in ["(a|b)*a(a|b)*", "a(a|b)*", "(a|b)(a|b)(a|b)"]:
    monoid = transition_monoid(regex_to_min_dfa(parse_regex(regex)))
    level = fo2_level(monoid)
    m = level.m
    print(f"{regex}: monoid size {monoid.size}, depth {level}")
    table = RankerTable(("a", "b"), m, 6, all_words(("a", "b"), 6))
    for n in range(1, 7):
        out = oracle_equiv_refines_morphism(monoid, m, n, 6, table=table)
        if out.holds:
            print(f"    n={n}: {out.num_classes:4d} classes, refines the morphism")
            break
        u, v = out.counterexample
        print(f"    n={n}: {out.num_classes:4d} classes, counterexample "
              f"{u!r} ~ {v!r} with different images")
    print()
