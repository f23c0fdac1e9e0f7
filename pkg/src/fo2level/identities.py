"""Omega-term identities deciding R_m / L_m membership by exhaustive checking.

The words G_m and I_m over variables x1..xm are built by the mirror
recursion G_2 = x2 x1, I_2 = x2 x1 x2, G_{m+1} = x_{m+1} mirror(G_m),
I_{m+1} = G_{m+1} x_{m+1} mirror(I_m).  The substitution ``phi_of`` sends
each variable to a fixed omega term; a finite monoid lies in R_m exactly
when it satisfies the DA identity (xy)^w x (xy)^w = (xy)^w together with
phi(G_m) = phi(I_m), and in L_m with both words mirrored.  This gives a
decision route independent of the quotient recursion in ``varieties``.

Identity checking enumerates all |M|^v assignments (vectorized, chunked);
a budget cap guards runaway inputs.  Everything here is pure and reentrant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .monoid import FiniteMonoid
from .varieties import LevelResult, NOT_FO2


class IdentityBudgetError(ValueError):
    """The assignment space exceeds the configured budget."""


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Prod:
    parts: tuple


@dataclass(frozen=True)
class Omega:
    inner: object


Term = Var | Prod | Omega


def format_term(t: Term) -> str:
    """Pretty-print: variables x1, x2, ..., '.' for products, (T)^w for powers."""
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Prod):
        return ".".join(format_term(p) for p in t.parts)
    return f"({format_term(t.inner)})^w"


def term_num_vars(t: Term) -> int:
    if isinstance(t, Var):
        return t.index
    if isinstance(t, Prod):
        return max(term_num_vars(p) for p in t.parts)
    return term_num_vars(t.inner)


def eval_term(m: FiniteMonoid, t: Term, assignment) -> int:
    """Evaluate a term under {variable index: element}; omega nodes take
    the idempotent power of their child's value."""
    if isinstance(t, Var):
        try:
            return assignment[t.index]
        except KeyError:
            raise ValueError(f"assignment does not cover x{t.index}") from None
    if isinstance(t, Prod):
        x = m.identity
        for p in t.parts:
            x = m.mul(x, eval_term(m, p, assignment))
        return x
    return m.omega_power(eval_term(m, t.inner, assignment))


# ---------------------------------------------------------------------------
# Variable words
# ---------------------------------------------------------------------------

def mirror(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(word))


def build_G(m: int) -> tuple[int, ...]:
    """G_2 = (2, 1); G_{m+1} = (m+1,) + mirror(G_m).  Uses exactly x1..xm."""
    if m < 2:
        raise ValueError("G_m is defined for m >= 2")
    if m == 2:
        return (2, 1)
    return (m,) + mirror(build_G(m - 1))


def build_I(m: int) -> tuple[int, ...]:
    """I_2 = (2, 1, 2); I_{m+1} = G_{m+1} + (m+1,) + mirror(I_m)."""
    if m < 2:
        raise ValueError("I_m is defined for m >= 2")
    if m == 2:
        return (2, 1, 2)
    return build_G(m) + (m,) + mirror(build_I(m - 1))


@lru_cache(maxsize=None)
def phi_of(k: int) -> Term:
    """The omega term substituted for x_k.

    phi(x1) = (x1^w x2^w x1^w)^w, phi(x2) = x2^w, and for k >= 3
    phi(x_k) = (x_k^w phi(G_{k-1} mirror(G_{k-1}))^w x_k^w)^w.
    """
    if k < 1:
        raise ValueError("variable indices are 1-based")
    if k == 1:
        return Omega(Prod((Omega(Var(1)), Omega(Var(2)), Omega(Var(1)))))
    if k == 2:
        return Omega(Var(2))
    g = build_G(k - 1)
    return Omega(Prod((Omega(Var(k)), Omega(phi_word(g + mirror(g))), Omega(Var(k)))))


def phi_word(word: tuple[int, ...]) -> Term:
    """Apply the substitution to a variable word: the product of phi_of images."""
    if not word:
        raise ValueError("variable words are nonempty")
    return Prod(tuple(phi_of(k) for k in word))


# ---------------------------------------------------------------------------
# Exhaustive identity checking
# ---------------------------------------------------------------------------

class IdentityCheck(NamedTuple):
    holds: bool
    witness: dict[int, int] | None


_CHUNK = 200_000


def _grid_eval(m: FiniteMonoid, t: Term, base: int, count: int, nvars: int, memo: dict) -> np.ndarray:
    """Evaluate t on assignments base..base+count-1 in mixed-radix order
    (variable x1 is the most significant digit)."""
    key = id(t)
    if key in memo:
        return memo[key]
    T = m.table
    n = m.size
    if isinstance(t, Var):
        idx = np.arange(base, base + count, dtype=np.int64)
        out = ((idx // (n ** (nvars - t.index))) % n).astype(np.int32)
    elif isinstance(t, Prod):
        out = _grid_eval(m, t.parts[0], base, count, nvars, memo)
        for p in t.parts[1:]:
            out = T[out, _grid_eval(m, p, base, count, nvars, memo)]
    else:
        out = m.omega_table[_grid_eval(m, t.inner, base, count, nvars, memo)]
    memo[key] = out
    return out


def satisfies_identity(m: FiniteMonoid, lhs: Term, rhs: Term,
                       max_assignments: int = 10_000_000) -> IdentityCheck:
    """Check lhs == rhs under every assignment of elements to variables.

    Returns the first failing assignment as a witness (deterministic:
    assignments are scanned in mixed-radix order on element indices).
    """
    nvars = max(term_num_vars(lhs), term_num_vars(rhs))
    n = m.size
    total = n ** nvars
    if total > max_assignments:
        raise IdentityBudgetError(
            f"identity check too large: {n}^{nvars} assignments exceed the "
            f"budget of {max_assignments}")
    for base in range(0, total, _CHUNK):
        count = min(_CHUNK, total - base)
        memo: dict = {}
        lv = _grid_eval(m, lhs, base, count, nvars, memo)
        rv = _grid_eval(m, rhs, base, count, nvars, memo)
        bad = np.nonzero(lv != rv)[0]
        if len(bad):
            idx = base + int(bad[0])
            witness = {k: (idx // (n ** (nvars - k))) % n for k in range(1, nvars + 1)}
            return IdentityCheck(False, witness)
    return IdentityCheck(True, None)


def da_identity() -> tuple[Term, Term]:
    """(x1 x2)^w x1 (x1 x2)^w  =  (x1 x2)^w."""
    e = Omega(Prod((Var(1), Var(2))))
    return Prod((e, Var(1), e)), e


def aperiodicity_identity() -> tuple[Term, Term]:
    """x1^w x1 = x1^w."""
    return Prod((Omega(Var(1)), Var(1))), Omega(Var(1))


def _r_identity(m: int) -> tuple[Term, Term]:
    return phi_word(build_G(m)), phi_word(build_I(m))


def _l_identity(m: int) -> tuple[Term, Term]:
    return phi_word(mirror(build_G(m))), phi_word(mirror(build_I(m)))


def in_Rm_by_identities(m: FiniteMonoid, level: int,
                        max_assignments: int = 10_000_000) -> bool:
    """R_level membership via identities: the DA identity and phi(G) = phi(I).

    Only defined for level >= 2; level 1 is J-triviality and is decided
    directly on the monoid.
    """
    if level < 2:
        raise ValueError("the identities route needs level >= 2")
    if not satisfies_identity(m, *da_identity(), max_assignments=max_assignments).holds:
        return False
    return satisfies_identity(m, *_r_identity(level), max_assignments=max_assignments).holds


def in_Lm_by_identities(m: FiniteMonoid, level: int,
                        max_assignments: int = 10_000_000) -> bool:
    """L_level membership: the DA identity and the mirrored word identity."""
    if level < 2:
        raise ValueError("the identities route needs level >= 2")
    if not satisfies_identity(m, *da_identity(), max_assignments=max_assignments).holds:
        return False
    return satisfies_identity(m, *_l_identity(level), max_assignments=max_assignments).holds


class IdentitiesLevel(NamedTuple):
    result: LevelResult
    witness_identity: str | None
    witness: dict[int, int] | None


def identities_level(m: FiniteMonoid, max_m: int = 6,
                     max_assignments: int = 10_000_000) -> IdentitiesLevel:
    """Alternation-depth search along the identities route.

    Mirrors ``varieties.fo2_level`` but decides each membership by identity
    checking alone.  The returned witness is the assignment refuting the
    last membership that failed before the answer (the DA identity for
    NotFO2, otherwise the identity separating depth m-1 from m).
    """
    if max_m < 1:
        raise ValueError("max_m must be >= 1")
    da = satisfies_identity(m, *da_identity(), max_assignments=max_assignments)
    if not da.holds:
        lhs, rhs = da_identity()
        return IdentitiesLevel(NOT_FO2, f"{format_term(lhs)} = {format_term(rhs)}", da.witness)
    last_witness = None
    last_identity = None
    for d in range(1, max_m + 1):
        ok = True
        for lhs, rhs in (_r_identity(d + 1), _l_identity(d + 1)):
            chk = satisfies_identity(m, lhs, rhs, max_assignments=max_assignments)
            if not chk.holds:
                ok = False
                last_witness = chk.witness
                last_identity = f"{format_term(lhs)} = {format_term(rhs)}"
                break
        if ok:
            return IdentitiesLevel(LevelResult("level", d), last_identity, last_witness)
    return IdentitiesLevel(LevelResult("exceeded", max_m), last_identity, last_witness)


# ---------------------------------------------------------------------------
# The conjectured simpler terms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def straubing_terms(m: int) -> tuple[Term, Term]:
    """The conjectured term pair (u_m, v_m) over variables x1..x_{2m}.

    u_1 = (x1 x2)^w, v_1 = (x2 x1)^w, and each next pair wraps the previous
    one as (x1..x_{2p} x_{2p+1})^w u_p (x_{2p+2} x1..x_{2p})^w with p = m-1.
    The recursion index is read as the previous level; reports using these
    terms are experimental.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return Omega(Prod((Var(1), Var(2)))), Omega(Prod((Var(2), Var(1))))
    u_prev, v_prev = straubing_terms(m - 1)
    p = m - 1
    left = Omega(Prod(tuple(Var(i) for i in range(1, 2 * p + 2))))
    right = Omega(Prod((Var(2 * p + 2),) + tuple(Var(i) for i in range(1, 2 * p + 1))))
    return Prod((left, u_prev, right)), Prod((left, v_prev, right))


def check_straubing(m: FiniteMonoid, level: int,
                    max_assignments: int = 10_000_000) -> bool:
    """Aperiodicity plus u_level = v_level, checked exhaustively."""
    if not satisfies_identity(m, *aperiodicity_identity(),
                              max_assignments=max_assignments).holds:
        return False
    u, v = straubing_terms(level)
    return satisfies_identity(m, u, v, max_assignments=max_assignments).holds
