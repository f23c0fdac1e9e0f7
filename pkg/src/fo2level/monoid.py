"""Finite monoids as multiplication tables, with Green's relations.

A FiniteMonoid has elements 0..N-1, a product given by an N x N table, a
distinguished identity, and optionally a generator map sending alphabet
symbols to elements (the morphism from the free monoid restricted to
letters).  The transition monoid of a complete DFA is obtained by closing
the letter transformations under composition; taking the minimal DFA yields
the syntactic monoid of its language.

Instances are immutable after construction; derived structure (idempotents,
omega powers, Green's preorders) is computed lazily and cached, and all
operations are pure, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Dfa


class MonoidFormatError(ValueError):
    """Malformed monoid description file or invalid table."""


class MonoidTooLargeError(ValueError):
    """Transition monoid exceeds the configured size cap."""


@dataclass(frozen=True)
class GreensData:
    """Divisibility preorders and the induced class partitions.

    jleq[u, v] holds when u is in MvM, rleq[u, v] when u is in vM, and
    lleq[u, v] when u is in Mv.  Class labels are numbered by smallest
    contained element.
    """

    jleq: np.ndarray
    rleq: np.ndarray
    lleq: np.ndarray
    j_class: np.ndarray
    r_class: np.ndarray
    l_class: np.ndarray

    @property
    def num_j(self) -> int:
        return int(self.j_class.max()) + 1

    @property
    def num_r(self) -> int:
        return int(self.r_class.max()) + 1

    @property
    def num_l(self) -> int:
        return int(self.l_class.max()) + 1


def _class_labels(eq: np.ndarray) -> np.ndarray:
    n = eq.shape[0]
    labels = np.full(n, -1, dtype=np.int32)
    nxt = 0
    for i in range(n):
        if labels[i] < 0:
            labels[eq[i]] = nxt
            nxt += 1
    return labels


class FiniteMonoid:
    """Multiplication-table monoid with optional generator map."""

    def __init__(self, table, identity: int, gens=None, words=None, validate: bool = True):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise MonoidFormatError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise MonoidFormatError("a monoid needs at least one element")
        if table.min() < 0 or table.max() >= n:
            raise MonoidFormatError("table entry out of range")
        if not (0 <= identity < n):
            raise MonoidFormatError("identity out of range")
        if validate:
            ar = np.arange(n, dtype=np.int32)
            if not (np.array_equal(table[identity], ar) and np.array_equal(table[:, identity], ar)):
                raise MonoidFormatError("identity law fails")
            for i in range(n):
                # (i*j)*k == i*(j*k), one row of i at a time to bound memory
                if not np.array_equal(table[table[i, :], :], table[i, table]):
                    raise MonoidFormatError("table is not associative")
        table.setflags(write=False)
        self._table = table
        self.identity = int(identity)
        self.gens = dict(gens) if gens is not None else None
        self.words = tuple(words) if words is not None else None
        if self.gens is not None:
            for a, x in self.gens.items():
                if not (0 <= x < n):
                    raise MonoidFormatError(f"generator {a!r} out of range")
            self._check_generated()
        self._omega = None
        self._greens = None
        self._idempotents = None

    def _check_generated(self):
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens.values():
                    y = int(self._table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) != self.size:
            raise MonoidFormatError("generators do not generate the monoid")

    # -- basic structure ---------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def size(self) -> int:
        return self._table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self._table[x, y])

    def eval_word(self, word) -> int:
        """Image of a word under the generator morphism; the empty word maps to 1."""
        if self.gens is None:
            raise ValueError("monoid has no generator map")
        x = self.identity
        for ch in word:
            try:
                g = self.gens[ch]
            except KeyError:
                raise ValueError(f"unknown letter {ch!r}") from None
            x = int(self._table[x, g])
        return x

    def idempotents(self) -> tuple[int, ...]:
        if self._idempotents is None:
            diag = self._table[np.arange(self.size), np.arange(self.size)]
            self._idempotents = tuple(int(i) for i in np.nonzero(diag == np.arange(self.size))[0])
        return self._idempotents

    def omega_power(self, x: int) -> int:
        """The unique idempotent among the powers of x."""
        return int(self.omega_table[x])

    @property
    def omega_table(self) -> np.ndarray:
        if self._omega is None:
            T = self._table
            out = np.empty(self.size, dtype=np.int32)
            for x in range(self.size):
                powers = []
                seen = set()
                y = x
                while y not in seen:
                    seen.add(y)
                    powers.append(y)
                    y = int(T[y, x])
                idem = [p for p in powers if int(T[p, p]) == p]
                assert len(set(idem)) == 1, "cyclic subsemigroup must have one idempotent"
                out[x] = idem[0]
            out.setflags(write=False)
            self._omega = out
        return self._omega

    def greens(self) -> GreensData:
        if self._greens is None:
            T = self._table
            n = self.size
            rleq = np.zeros((n, n), dtype=bool)
            lleq = np.zeros((n, n), dtype=bool)
            jleq = np.zeros((n, n), dtype=bool)
            for v in range(n):
                rleq[T[v, :], v] = True
                lleq[T[:, v], v] = True
                jleq[T[:, T[v, :]].ravel(), v] = True
            self._greens = GreensData(
                jleq=jleq, rleq=rleq, lleq=lleq,
                j_class=_class_labels(jleq & jleq.T),
                r_class=_class_labels(rleq & rleq.T),
                l_class=_class_labels(lleq & lleq.T),
            )
        return self._greens

    # -- variety predicates --------------------------------------------------

    def is_j_trivial(self) -> bool:
        return self.greens().num_j == self.size

    def is_r_trivial(self) -> bool:
        return self.greens().num_r == self.size

    def is_l_trivial(self) -> bool:
        return self.greens().num_l == self.size

    def is_aperiodic(self) -> bool:
        """x * x^omega == x^omega for every x."""
        ar = np.arange(self.size)
        om = self.omega_table
        return bool(np.array_equal(self._table[ar, om], om))

    def is_in_da(self) -> bool:
        """(xy)^omega x (xy)^omega == (xy)^omega for all x, y."""
        T = self._table
        n = self.size
        E = self.omega_table[T]                      # E[x, y] = (x*y)^omega
        X = np.broadcast_to(np.arange(n)[:, None], (n, n))
        return bool(np.array_equal(T[T[E, X], E], E))

    def da_witness(self) -> tuple[int, int] | None:
        """A pair (x, y) violating the DA identity, if any."""
        T = self._table
        n = self.size
        E = self.omega_table[T]
        X = np.broadcast_to(np.arange(n)[:, None], (n, n))
        bad = np.argwhere(T[T[E, X], E] != E)
        if len(bad) == 0:
            return None
        x, y = bad[0]
        return int(x), int(y)

    def is_in_j1(self) -> bool:
        """Commutative and idempotent."""
        T = self._table
        diag = T[np.arange(self.size), np.arange(self.size)]
        return bool(np.array_equal(T, T.T) and np.array_equal(diag, np.arange(self.size)))

    # -- presentation --------------------------------------------------------

    def element_name(self, x: int) -> str:
        if self.words is not None:
            w = self.words[x]
            return w if w else "eps"
        return f"#{x}"

    def __repr__(self):
        return f"FiniteMonoid(size={self.size})"


def transition_monoid(dfa: Dfa, max_size: int = 100_000) -> FiniteMonoid:
    """Close the letter transformations of a complete DFA under composition.

    Elements are discovered breadth-first from the identity transformation,
    extending by letters in alphabet order, which makes element indices (and
    the stored shortest generating words) reproducible.
    """
    S = dfa.n_states
    letter_maps = [tuple(dfa.delta[s][ai] for s in range(S)) for ai in range(len(dfa.alphabet))]
    ident = tuple(range(S))
    index = {ident: 0}
    elems = [ident]
    words = [""]
    qi = 0
    while qi < len(elems):
        t = elems[qi]
        for ai, a in enumerate(dfa.alphabet):
            lm = letter_maps[ai]
            u = tuple(lm[x] for x in t)
            if u not in index:
                if len(elems) >= max_size:
                    raise MonoidTooLargeError(
                        f"transition monoid exceeds {max_size} elements; "
                        "raise the cap to proceed")
                index[u] = len(elems)
                elems.append(u)
                words.append(words[qi] + a)
        qi += 1
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    arrs = [np.array(e, dtype=np.int32) for e in elems]
    for i in range(n):
        ei = arrs[i]
        for j in range(n):
            table[i, j] = index[tuple(arrs[j][ei])]
    gens = {a: index[letter_maps[ai]] for ai, a in enumerate(dfa.alphabet)}
    return FiniteMonoid(table, 0, gens=gens, words=words, validate=False)


def syntactic_monoid(dfa: Dfa, max_size: int = 100_000) -> FiniteMonoid:
    """Transition monoid of the minimal DFA for L(dfa)."""
    from .automata import minimize
    return transition_monoid(minimize(dfa), max_size=max_size)


def reverse_monoid(m: FiniteMonoid) -> FiniteMonoid:
    """The monoid with the opposite product (x *' y = y * x).

    Generator images are preserved; they now evaluate mirror words, so the
    stored shortest-word names are dropped.
    """
    return FiniteMonoid(m.table.T.copy(), m.identity, gens=m.gens, validate=False)


def parse_monoid_file(text: str) -> FiniteMonoid:
    """Parse the line-based monoid format and validate the axioms.

    Expected: ``size: N``, ``identity: i``, optional ``gen SYMBOL i`` lines,
    then ``table`` followed by N rows of N indices (row r, column c = r*c).
    ``#`` starts a comment line.
    """
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append(s)
    if not lines or not lines[0].startswith("size:"):
        raise MonoidFormatError("missing 'size:' line")
    try:
        n = int(lines[0][5:].strip())
    except ValueError:
        raise MonoidFormatError("malformed 'size:' line") from None
    if n < 1:
        raise MonoidFormatError("size must be at least 1")
    if len(lines) < 2 or not lines[1].startswith("identity:"):
        raise MonoidFormatError("missing 'identity:' line")
    try:
        identity = int(lines[1][9:].strip())
    except ValueError:
        raise MonoidFormatError("malformed 'identity:' line") from None
    gens = {}
    i = 2
    while i < len(lines) and lines[i].startswith("gen "):
        toks = lines[i].split()
        if len(toks) != 3:
            raise MonoidFormatError(f"malformed gen line: {lines[i]!r}")
        try:
            gens[toks[1]] = int(toks[2])
        except ValueError:
            raise MonoidFormatError(f"malformed gen line: {lines[i]!r}") from None
        i += 1
    if i >= len(lines) or lines[i] != "table":
        raise MonoidFormatError("missing 'table' line")
    rows = lines[i + 1:]
    if len(rows) != n:
        raise MonoidFormatError(f"expected {n} table rows, found {len(rows)}")
    table = []
    for row in rows:
        toks = row.split()
        if len(toks) != n:
            raise MonoidFormatError(f"table row has {len(toks)} entries, expected {n}")
        try:
            table.append([int(t) for t in toks])
        except ValueError:
            raise MonoidFormatError(f"malformed table row: {row!r}") from None
    return FiniteMonoid(table, identity, gens=gens or None, validate=True)
