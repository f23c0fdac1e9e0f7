import numpy as np
import pytest

from conftest import cyclic_two, left_zero, right_zero, trivial, two_element_zero
from fo2level.automata import all_words, minimize, parse_regex, regex_to_min_dfa
from fo2level.monoid import (FiniteMonoid, MonoidFormatError,
                             MonoidTooLargeError, parse_monoid_file,
                             reverse_monoid, syntactic_monoid,
                             transition_monoid)


def monoid_of(text: str) -> FiniteMonoid:
    return transition_monoid(regex_to_min_dfa(parse_regex(text)))


def test_transition_monoid_sizes():
    assert monoid_of("(a|b)*").size == 1
    assert monoid_of("(ab)*").size == 6
    assert monoid_of("(a|b)*a(a|b)*").size == 2


def test_eval_word():
    m = monoid_of("(ab)*")
    assert m.eval_word("") == m.identity
    ab = m.eval_word("ab")
    assert m.mul(ab, ab) == ab
    zero = m.eval_word("aa")
    assert m.eval_word("bb") == zero
    assert all(m.mul(zero, x) == zero and m.mul(x, zero) == zero for x in range(m.size))
    with pytest.raises(ValueError):
        m.eval_word("ax")


def test_idempotents():
    assert trivial().idempotents() == (0,)
    assert two_element_zero().idempotents() == (0, 1)
    m = monoid_of("(ab)*")
    expected = {m.identity, m.eval_word("ab"), m.eval_word("ba"), m.eval_word("aa")}
    assert set(m.idempotents()) == expected


def test_omega_power():
    m = monoid_of("(ab)*")
    for x in range(m.size):
        w = m.omega_power(x)
        assert m.mul(w, w) == w
        # w is a power of x
        powers = set()
        y = x
        while y not in powers:
            powers.add(y)
            y = m.mul(y, x)
        assert w in powers
    assert m.omega_power(m.eval_word("a")) == m.eval_word("aa")
    assert m.omega_power(m.identity) == m.identity


def test_greens_examples():
    g = two_element_zero().greens()
    assert g.num_j == 2 and g.jleq[1, 0] and not g.jleq[0, 1]

    lz = left_zero()
    g = lz.greens()
    assert g.j_class[1] == g.j_class[2]            # a J b
    assert g.num_r == 3                            # R-classes all singletons
    assert g.l_class[1] == g.l_class[2]            # one L-class {a, b}

    m = monoid_of("(ab)*")
    g = m.greens()
    assert g.num_j == 3
    sizes = sorted(np.bincount(g.j_class).tolist())
    assert sizes == [1, 1, 4]


def test_greens_preorder_refinement():
    for m in [left_zero(), right_zero(), monoid_of("(ab)*"), monoid_of("a*b*")]:
        g = m.greens()
        assert not (g.rleq & ~g.jleq).any()
        assert not (g.lleq & ~g.jleq).any()


def test_trivialities():
    assert all([two_element_zero().is_j_trivial(),
                two_element_zero().is_r_trivial(),
                two_element_zero().is_l_trivial()])
    lz = left_zero()
    assert lz.is_r_trivial() and not lz.is_l_trivial() and not lz.is_j_trivial()
    m = monoid_of("(ab)*")
    assert not m.is_j_trivial() and not m.is_r_trivial() and not m.is_l_trivial()


def test_j_trivial_iff_r_and_l(mixed_entries):
    for e in mixed_entries:
        m = e.monoid
        assert m.is_j_trivial() == (m.is_r_trivial() and m.is_l_trivial())


def test_aperiodic():
    assert two_element_zero().is_aperiodic()
    assert not cyclic_two().is_aperiodic()
    assert monoid_of("(ab)*").is_aperiodic()


def test_da_membership():
    assert two_element_zero().is_in_da()
    assert left_zero().is_in_da()
    m = monoid_of("(ab)*")
    assert not m.is_in_da()
    x, y = m.da_witness()
    assert {x, y} == {m.eval_word("a"), m.eval_word("b")}


def test_j1_membership():
    assert trivial().is_in_j1()
    assert two_element_zero().is_in_j1()
    assert not left_zero().is_in_j1()


def test_hierarchy_inclusions(mixed_entries):
    for e in mixed_entries:
        m = e.monoid
        if m.is_in_j1():
            assert m.is_in_da()
        if m.is_in_da():
            assert m.is_aperiodic()


def test_recognition():
    # the syntactic monoid recognizes the language: acceptance is a function
    # of the transformation image
    for text in ["(ab)*", "a(a|b)*", "(a|b)*a(a|b)*", "a*b*"]:
        d = minimize(regex_to_min_dfa(parse_regex(text)))
        m = transition_monoid(d)
        images = {}
        for w in all_words(d.alphabet, 8):
            x = m.eval_word(w)
            acc = d.accepts(w)
            assert images.setdefault(x, acc) == acc, (text, w)


def test_reverse_monoid():
    lz = left_zero()
    rz = reverse_monoid(lz)
    assert rz.is_l_trivial() and not rz.is_r_trivial()
    assert np.array_equal(rz.table, right_zero().table)


LEFT_ZERO_FILE = """\
# left-zero adjoined identity
size: 3
identity: 0
gen a 1
gen b 2
table
0 1 2
1 1 1
2 2 2
"""


def test_parse_monoid_file():
    m = parse_monoid_file(LEFT_ZERO_FILE)
    assert m.size == 3 and m.identity == 0
    assert m.gens == {"a": 1, "b": 2}
    assert m.is_r_trivial() and not m.is_l_trivial()
    one = parse_monoid_file("size: 1\nidentity: 0\ntable\n0\n")
    assert one.size == 1


@pytest.mark.parametrize("text,msg", [
    ("size: 2\nidentity: 0\ntable\n0 1\n1\n", "entries"),
    ("size: 2\nidentity: 1\ntable\n0 1\n1 0\n", "identity law"),
    ("size: 2\nidentity: 5\ntable\n0 1\n1 0\n", "identity out of range"),
    ("size: 3\nidentity: 0\ntable\n0 1 2\n1 2 1\n2 1 1\n", "associative"),
    ("identity: 0\ntable\n0\n", "size"),
    ("size: 2\nidentity: 0\ngen a 1\ntable\n0 1\n1 0\n", None),  # ok: generates
    ("size: 3\nidentity: 0\ngen a 1\ntable\n0 1 2\n1 1 1\n2 2 2\n", "generate"),
])
def test_parse_monoid_file_errors(text, msg):
    if msg is None:
        parse_monoid_file(text)
    else:
        with pytest.raises(MonoidFormatError, match=msg):
            parse_monoid_file(text)


def test_monoid_size_cap():
    d = regex_to_min_dfa(parse_regex("(ab)*"))
    with pytest.raises(MonoidTooLargeError):
        transition_monoid(d, max_size=3)


def test_syntactic_monoid_minimizes_first():
    d = regex_to_min_dfa(parse_regex("(ab)*"))
    bigger = type(d)(d.alphabet, d.delta + ((0, 0),), d.initial, d.finals)
    assert syntactic_monoid(bigger).size == 6


def test_element_names_are_shortest_words():
    m = monoid_of("(ab)*")
    assert m.words[m.identity] == ""
    assert m.element_name(m.eval_word("ab")) == "ab"
    assert m.element_name(m.identity) == "eps"
