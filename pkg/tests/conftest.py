import pytest

from fo2level.automata import all_words
from fo2level.corpus import da_entries, make_entries
from fo2level.monoid import FiniteMonoid
from fo2level.rankers import RankerTable

CORPUS_SEED = 7


@pytest.fixture(scope="session")
def da_corpus():
    """200 random minimal DFAs (<= 4 states, 2 letters) with monoids in DA."""
    return da_entries(CORPUS_SEED, 200)


@pytest.fixture(scope="session")
def mixed_entries():
    """Random minimal DFAs without the DA filter (includes non-DA monoids)."""
    return make_entries(CORPUS_SEED + 1, 120)


@pytest.fixture(scope="session")
def table_ab6():
    """Ranker table for m,n <= 3 over all 2-letter words of length <= 6."""
    return RankerTable(("a", "b"), 3, 3, all_words(("a", "b"), 6))


@pytest.fixture(scope="session")
def table_ab7():
    """Same but words up to length 7, for congruence extension sampling."""
    return RankerTable(("a", "b"), 3, 3, all_words(("a", "b"), 7))


# -- small hand-built monoids ------------------------------------------------

def left_zero():
    # {1, a, b} with x*y = x for x, y != 1
    return FiniteMonoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0,
                        gens={"a": 1, "b": 2}, words=["", "a", "b"])


def right_zero():
    # {1, a, b} with x*y = y for x, y != 1
    return FiniteMonoid([[0, 1, 2], [1, 1, 2], [2, 1, 2]], 0,
                        gens={"a": 1, "b": 2}, words=["", "a", "b"])


def two_element_zero():
    # {1, 0}; with these generators it is the syntactic monoid of "contains a"
    return FiniteMonoid([[0, 1], [1, 1]], 0, gens={"a": 1, "b": 0}, words=["", "a"])


def cyclic_two():
    # {1, g} with g*g = 1
    return FiniteMonoid([[0, 1], [1, 0]], 0, gens={"a": 1}, words=["", "a"])


def trivial():
    return FiniteMonoid([[0]], 0, gens={"a": 0, "b": 0}, words=[""])
