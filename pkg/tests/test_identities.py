import itertools
import random

import pytest

from conftest import cyclic_two, left_zero, right_zero, trivial, two_element_zero
from fo2level.automata import parse_regex, regex_to_min_dfa
from fo2level.identities import (IdentityBudgetError, Omega, Prod, Var,
                                 aperiodicity_identity, build_G, build_I,
                                 check_straubing, da_identity, eval_term,
                                 format_term, in_Lm_by_identities,
                                 in_Rm_by_identities, mirror, phi_of,
                                 phi_word, satisfies_identity,
                                 straubing_terms, term_num_vars)
from fo2level.monoid import reverse_monoid, transition_monoid


def monoid_of(text):
    return transition_monoid(regex_to_min_dfa(parse_regex(text)))


def test_mirror():
    assert mirror((2, 1)) == (1, 2)
    assert mirror((2, 1, 2)) == (2, 1, 2)
    assert mirror((3,)) == (3,)


def test_word_recursion():
    assert build_G(2) == (2, 1)
    assert build_I(2) == (2, 1, 2)
    assert build_G(3) == (3, 1, 2)
    assert build_I(3) == (3, 1, 2, 3, 2, 1, 2)
    with pytest.raises(ValueError):
        build_G(1)
    for m in range(2, 8):
        assert len(build_G(m)) == m
        assert max(build_G(m)) == m
        if m > 2:
            assert len(build_I(m)) == len(build_G(m)) + 1 + len(build_I(m - 1))


def test_phi_structure():
    assert phi_of(1) == Omega(Prod((Omega(Var(1)), Omega(Var(2)), Omega(Var(1)))))
    assert phi_of(2) == Omega(Var(2))
    g2g2m = phi_word((2, 1, 1, 2))
    assert phi_of(3) == Omega(Prod((Omega(Var(3)), Omega(g2g2m), Omega(Var(3)))))


def test_format_term():
    assert format_term(phi_of(1)) == "((x1)^w.(x2)^w.(x1)^w)^w"
    assert format_term(Var(4)) == "x4"
    assert format_term(Prod((Var(1), Omega(Var(2))))) == "x1.(x2)^w"


def test_eval_term_basics():
    m = monoid_of("(ab)*")
    a, b = m.eval_word("a"), m.eval_word("b")
    assert eval_term(m, Var(1), {1: a}) == a
    assert eval_term(m, Omega(Var(1)), {1: m.eval_word("ab")}) == m.eval_word("ab")
    assert eval_term(m, Omega(Prod((Var(1), Var(2)))), {1: a, 2: b}) == m.eval_word("ab")
    with pytest.raises(ValueError):
        eval_term(m, Var(2), {1: a})


def test_omega_eval_is_idempotent():
    rng = random.Random(5)
    for mono in [monoid_of("(ab)*"), monoid_of("a*b*"), left_zero(), cyclic_two()]:
        for _ in range(50):
            t = Omega(Prod(tuple(Var(rng.randint(1, 2)) for _ in range(rng.randint(1, 3)))))
            assg = {1: rng.randrange(mono.size), 2: rng.randrange(mono.size)}
            v = eval_term(mono, t, assg)
            assert mono.mul(v, v) == v


def test_satisfies_identity():
    lhs, rhs = da_identity()
    ok = satisfies_identity(two_element_zero(), lhs, rhs)
    assert ok.holds and ok.witness is None

    m = monoid_of("(ab)*")
    res = satisfies_identity(m, lhs, rhs)
    assert not res.holds
    # the witness really falsifies the identity
    assert eval_term(m, lhs, res.witness) != eval_term(m, rhs, res.witness)
    assert res.witness == {1: m.eval_word("a"), 2: m.eval_word("b")}

    t = phi_word(build_G(2))
    same = satisfies_identity(m, t, t)
    assert same.holds


def test_satisfies_identity_matches_bruteforce():
    # scalar enumeration as an independent oracle for the vectorized check
    lhs, rhs = da_identity()
    for mono in [trivial(), two_element_zero(), left_zero(), right_zero(), cyclic_two()]:
        brute = all(eval_term(mono, lhs, {1: x, 2: y}) == eval_term(mono, rhs, {1: x, 2: y})
                    for x, y in itertools.product(range(mono.size), repeat=2))
        assert satisfies_identity(mono, lhs, rhs).holds == brute


def test_aperiodicity_identity():
    lhs, rhs = aperiodicity_identity()
    assert satisfies_identity(two_element_zero(), lhs, rhs).holds
    assert not satisfies_identity(cyclic_two(), lhs, rhs).holds


def test_identity_budget():
    m = monoid_of("(ab)*")
    with pytest.raises(IdentityBudgetError, match="too large"):
        satisfies_identity(m, *da_identity(), max_assignments=10)


def test_membership_by_identities_examples():
    lz = left_zero()
    assert in_Rm_by_identities(lz, 2)
    assert not in_Lm_by_identities(lz, 2)
    assert in_Lm_by_identities(lz, 3)
    assert in_Rm_by_identities(two_element_zero(), 2)
    with pytest.raises(ValueError):
        in_Rm_by_identities(lz, 1)


def test_membership_mirror_duality():
    for mono in [left_zero(), right_zero(), two_element_zero(), monoid_of("a*b*")]:
        rev = reverse_monoid(mono)
        for m in (2, 3):
            assert in_Lm_by_identities(mono, m) == in_Rm_by_identities(rev, m)


def test_straubing_terms():
    u1, v1 = straubing_terms(1)
    assert u1 == Omega(Prod((Var(1), Var(2))))
    assert v1 == Omega(Prod((Var(2), Var(1))))
    u2, v2 = straubing_terms(2)
    assert term_num_vars(u2) == 4 and term_num_vars(v2) == 4
    assert format_term(u2).startswith("(x1.x2.x3)^w")


def test_check_straubing():
    for m in (1, 2):
        assert check_straubing(trivial(), m)
    assert not check_straubing(cyclic_two(), 1)  # not aperiodic
    # at level 1 the conjectured identities characterize J-triviality
    for mono in [two_element_zero(), left_zero(), right_zero(), monoid_of("(ab)*")]:
        assert check_straubing(mono, 1) == mono.is_j_trivial()
