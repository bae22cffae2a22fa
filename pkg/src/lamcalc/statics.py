"""Iterated static type assignment and degree assignment.

The n-iterated static type climbs the typing chain n steps without any
beta/zeta/theta work: sorts step along the hierarchy, references through a
declaration use the declared type, references through a definition keep the
definiens' own static type.  The degree of a term counts how many such
steps remain before the chain becomes constant.  Both are deterministic
partial functions; ``None`` means the head variable of the term is not
hereditarily resolvable in the environment.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .relocation import lift
from .terms import (
    Bind,
    BindKind,
    Env,
    Flat,
    FlatKind,
    Params,
    Sort,
    Term,
    Var,
    env_push,
)

__all__ = ["lstas", "da", "lsubd_holds"]


def lstas(params: Params, env: Env, term: Term, n: int) -> Optional[Term]:
    """The n-iterated static type, or ``None`` when unassigned."""

    return _lstas(params.c, env, term, n)


@lru_cache(maxsize=None)
def _lstas(c: int, env: Env, term: Term, n: int) -> Optional[Term]:
    match term:
        case Sort(k):
            return Sort(k + n * c)
        case Var(i):
            if i >= len(env):
                return None
            kind, side = env[i]
            rest = env[i + 1 :]
            if kind == BindKind.ABBR:
                inner = _lstas(c, rest, side, n)
            elif n == 0:
                # a declared variable is its own static type, provided the
                # declared type has one
                if _lstas(c, rest, side, 0) is None:
                    return None
                return term
            else:
                inner = _lstas(c, rest, side, n - 1)
            if inner is None:
                return None
            return lift(0, i + 1, inner)
        case Bind(kind, side, body):
            inner = _lstas(c, env_push(env, kind, side), body, n)
            if inner is None:
                return None
            return Bind(kind, side, inner)
        case Flat(FlatKind.APPL, side, body):
            inner = _lstas(c, env, body, n)
            if inner is None:
                return None
            return Flat(FlatKind.APPL, side, inner)
        case Flat(FlatKind.CAST, _, body):
            return _lstas(c, env, body, n)
    raise TypeError(f"not a term: {term!r}")


def da(params: Params, env: Env, term: Term) -> Optional[int]:
    """Degree of a term, or ``None`` when unassigned."""

    return _da(params.c, params.big_d, env, term)


@lru_cache(maxsize=None)
def _da(c: int, big_d: int, env: Env, term: Term) -> Optional[int]:
    match term:
        case Sort(k):
            d = big_d - k // c
            return d if d > 0 else 0
        case Var(i):
            if i >= len(env):
                return None
            kind, side = env[i]
            inner = _da(c, big_d, env[i + 1 :], side)
            if inner is None:
                return None
            return inner if kind == BindKind.ABBR else inner + 1
        case Bind(kind, side, body):
            return _da(c, big_d, env_push(env, kind, side), body)
        case Flat(_, _, body):
            return _da(c, big_d, env, body)
    raise TypeError(f"not a term: {term!r}")


def lsubd_holds(params: Params, env1: Env, env2: Env) -> bool:
    """Refinement for preservation of degree.

    ``env1`` refines ``env2`` when they agree entrywise, except that a
    declaration ``dec w`` of ``env2`` may appear in ``env1`` as a definition
    ``def (cast w v)`` whose definiens sits one degree below its annotation.
    """

    if not env1 and not env2:
        return True
    if not env1 or not env2:
        return False
    head1, head2 = env1[0], env2[0]
    rest1, rest2 = env1[1:], env2[1:]
    if head1 != head2:
        match head1, head2:
            case (
                (BindKind.ABBR, Flat(FlatKind.CAST, w1, v)),
                (BindKind.ABST, w2),
            ) if w1 == w2:
                dv = da(params, rest1, v)
                dw = da(params, rest2, w2)
                if dv is None or dw is None or dv != dw + 1:
                    return False
            case _:
                return False
    return lsubd_holds(params, rest1, rest2)
