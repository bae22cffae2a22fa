"""Atomic arities: the simple-type skeleton that gates normalization.

Every sort has the base arity; an abstraction builds an arrow; an
application consumes one, demanding the argument's arity to be exactly the
domain.  Terms with an arity are strongly normalizing, so the validity
checker refuses to normalize anything without one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .terms import Bind, BindKind, Env, Flat, FlatKind, Sort, Term, Var, env_push

__all__ = ["Arity", "Base", "Arrow", "aaa", "lsuba_holds"]


@dataclass(frozen=True)
class Base:
    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Arrow:
    dom: "Arity"
    cod: "Arity"

    def __str__(self) -> str:
        return f"({self.dom} -> {self.cod})"


Arity = Union[Base, Arrow]


def aaa(env: Env, term: Term) -> Optional[Arity]:
    """Infer the atomic arity, or ``None`` if there is none."""

    return _aaa(env, term)


@lru_cache(maxsize=None)
def _aaa(env: Env, term: Term) -> Optional[Arity]:
    match term:
        case Sort(_):
            return Base()
        case Var(i):
            if i >= len(env):
                return None
            _, side = env[i]
            return _aaa(env[i + 1 :], side)
        case Bind(BindKind.ABBR, side, body):
            if _aaa(env, side) is None:
                return None
            return _aaa(env_push(env, BindKind.ABBR, side), body)
        case Bind(BindKind.ABST, side, body):
            dom = _aaa(env, side)
            if dom is None:
                return None
            cod = _aaa(env_push(env, BindKind.ABST, side), body)
            if cod is None:
                return None
            return Arrow(dom, cod)
        case Flat(FlatKind.APPL, side, body):
            arg = _aaa(env, side)
            fun = _aaa(env, body)
            match fun:
                case Arrow(dom, cod) if dom == arg and arg is not None:
                    return cod
                case _:
                    return None
        case Flat(FlatKind.CAST, side, body):
            ann = _aaa(env, side)
            sub = _aaa(env, body)
            if ann is None or ann != sub:
                return None
            return sub
    raise TypeError(f"not a term: {term!r}")


def lsuba_holds(env1: Env, env2: Env) -> bool:
    """Refinement for preservation of atomic arity (atom/pair/beta)."""

    if not env1 and not env2:
        return True
    if not env1 or not env2:
        return False
    head1, head2 = env1[0], env2[0]
    rest1, rest2 = env1[1:], env2[1:]
    if head1 != head2:
        match head1, head2:
            case (
                (BindKind.ABBR, Flat(FlatKind.CAST, w1, _) as cast_term),
                (BindKind.ABST, w2),
            ) if w1 == w2:
                left = aaa(rest1, cast_term)
                right = aaa(rest2, w2)
                if left is None or left != right:
                    return False
            case _:
                return False
    return lsuba_holds(rest1, rest2)
