"""Core data model: terms, environments, closures, calculus parameters.

Terms are written with de Bruijn indices.  There are two atoms (sorts and
variable references) and four binary constructors, grouped into two shapes:

* binders (``Bind``): abbreviation ``abbr v t`` ("let" with body ``t``) and
  typed abstraction ``abst w t`` (lambda with domain ``w``);
* flat items (``Flat``): application ``appl v t`` (``t`` applied to the
  argument ``v``) and type annotation ``cast w t``.

Environments are stacks of named-free entries, one per binder that has been
walked under.  Entry 0 is the innermost one, i.e. the entry that ``#0``
refers to.  The concrete text syntax lists entries outermost first; see
:mod:`lamcalc.sexpr`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "BindKind",
    "FlatKind",
    "Term",
    "Sort",
    "Var",
    "Bind",
    "Flat",
    "Env",
    "Entry",
    "Closure",
    "Params",
    "abbr",
    "abst",
    "appl",
    "cast",
    "env_push",
    "length",
    "append",
    "applv",
    "simple",
    "tsts",
    "term_size",
    "closure_measure",
]


class BindKind(enum.IntEnum):
    """Binder flavours: a definition (let) or a typed declaration (lambda)."""

    ABBR = 0
    ABST = 1


class FlatKind(enum.IntEnum):
    """Non-binding flavours: application or type annotation."""

    APPL = 0
    CAST = 1


class Term:
    """Base class for the four term constructors."""

    __slots__ = ()


@dataclass(frozen=True)
class Sort(Term):
    """Sort (universe) constant ``*k``."""

    k: int


@dataclass(frozen=True)
class Var(Term):
    """Variable reference ``#i`` by de Bruijn depth."""

    i: int


@dataclass(frozen=True)
class Bind(Term):
    """Binder: ``abbr side body`` or ``abst side body``.

    The ``side`` is the definiens (for ABBR) or the declared type (for
    ABST); ``body`` lives under one more binder.
    """

    kind: BindKind
    side: Term
    body: Term


@dataclass(frozen=True)
class Flat(Term):
    """Flat item: ``appl side body`` or ``cast side body``.

    For APPL the ``side`` is the argument and ``body`` the function part;
    for CAST the ``side`` is the annotation and ``body`` the subject.
    """

    kind: FlatKind
    side: Term
    body: Term


def abbr(v: Term, t: Term) -> Bind:
    return Bind(BindKind.ABBR, v, t)


def abst(w: Term, t: Term) -> Bind:
    return Bind(BindKind.ABST, w, t)


def appl(v: Term, t: Term) -> Flat:
    return Flat(FlatKind.APPL, v, t)


def cast(w: Term, t: Term) -> Flat:
    return Flat(FlatKind.CAST, w, t)


# An environment entry pairs a binder flavour with its side term: ABBR
# entries carry a definiens ("def" in the text syntax), ABST entries carry
# a declared type ("dec").  Environments are plain tuples, entry 0
# innermost.
Entry = tuple[BindKind, Term]
Env = tuple[Entry, ...]


class Closure(NamedTuple):
    """A term together with the environment it is read in."""

    env: Env
    term: Term


@dataclass(frozen=True)
class Params:
    """Calculus parameters.

    ``c`` and ``big_d`` fix the sort hierarchy: the next sort after ``*k``
    is ``*(k+c)`` and the degree of ``*k`` is ``big_d - k//c`` clipped at
    zero.  ``fuel`` bounds normalization rounds, ``budget`` bounds node and
    set sizes in searches and graph traversals.
    """

    c: int = 1
    big_d: int = 2
    fuel: int = 1000
    budget: int = 100000

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("sort step c must be >= 1")
        if self.big_d < 0 or self.fuel < 0 or self.budget < 0:
            raise ValueError("big_d, fuel and budget must be naturals")

    def next_sort(self, k: int) -> int:
        return k + self.c

    def deg_sort(self, k: int) -> int:
        d = self.big_d - k // self.c
        return d if d > 0 else 0


def env_push(env: Env, kind: BindKind, side: Term) -> Env:
    """Extend ``env`` with one innermost entry (the new ``#0``)."""

    return ((kind, side),) + env


def length(env: Env) -> int:
    """Number of entries."""

    return len(env)


def append(outer: Env, inner: Env) -> Env:
    """Concatenate: the entries of ``inner`` become the innermost ones."""

    return inner + outer


def applv(args: tuple[Term, ...], t: Term) -> Term:
    """Iterated application of ``t`` to a vector of arguments.

    ``applv((v1, v2), t)`` is ``appl v1 (appl v2 t)``.
    """

    out = t
    for v in reversed(args):
        out = Flat(FlatKind.APPL, v, out)
    return out


def simple(t: Term) -> bool:
    """True for terms that are not binders."""

    return not isinstance(t, Bind)


def tsts(t1: Term, t2: Term) -> bool:
    """Same top structure: identical atom, or same-kind binary constructor."""

    match t1, t2:
        case (Sort(_), Sort(_)) | (Var(_), Var(_)):
            return t1 == t2
        case Bind(kind=k1), Bind(kind=k2):
            return k1 == k2
        case Flat(kind=k1), Flat(kind=k2):
            return k1 == k2
        case _:
            return False


def term_size(t: Term) -> int:
    """Number of constructors in ``t``."""

    match t:
        case Bind(_, w, u) | Flat(_, w, u):
            return 1 + term_size(w) + term_size(u)
        case _:
            return 1


def closure_measure(c: Closure) -> int:
    """Sum of the constructors of the term and of every entry side.

    This is the measure that strictly decreases along direct subclosure
    steps, which is what makes recursion over subclosures well founded.
    """

    return term_size(c.term) + sum(term_size(w) for _, w in c.env)
