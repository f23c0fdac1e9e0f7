#!/usr/bin/env python3
"""Walkthrough: from a regular expression to its alternation depth.

Each language below is parsed, compiled to its minimal complete DFA, and
its syntactic monoid (the transition monoid of that DFA) is classified:
the least m such that the language is definable with m alternating
quantifier blocks in two-variable first-order logic, or none when the
monoid falls outside DA.
"""

from fo2level import (fo2_level, identities_level, parse_regex,
                      regex_to_min_dfa, transition_monoid)

LANGUAGES = [
    ("(a|b)*", "everything"),
    ("(a|b)*a(a|b)*", "contains an a"),
    ("a(a|b)*", "starts with a"),
    ("(a|b)*ab(a|b)*", "contains the factor ab"),
    ("a*b*", "no b before an a"),
    ("(ab)*", "alternating word ababab..."),
]

for regex, gloss in LANGUAGES:
    dfa = regex_to_min_dfa(parse_regex(regex))
    monoid = transition_monoid(dfa)
    quotient_route = fo2_level(monoid)
    identity_route = identities_level(monoid)
    print(f"{regex:22} ({gloss})")
    print(f"    minimal DFA: {dfa.n_states} states; syntactic monoid: {monoid.size} elements")
    print(f"    alternation depth, quotient route:   {quotient_route}")
    print(f"    alternation depth, identities route: {identity_route.result}")
    if identity_route.witness is not None:
        named = {f"x{k}": monoid.element_name(v)
                 for k, v in sorted(identity_route.witness.items())}
        print(f"    separating identity fails at {named}: {identity_route.witness_identity}")
    print()

print("The two routes are independent implementations; the analyzer")
print("refuses to answer when they disagree (they never should).")
