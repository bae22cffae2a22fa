"""Bounded, deterministic enumeration of closures.

The enumeration drives the exhaustive property suites: a fixed total order,
no duplicates, and hard bounds on term size, sort indices, reference depths
and environment length, so independent runs iterate the exact same values
in the exact same order.
"""

from __future__ import annotations

from typing import Iterator

from .terms import Bind, BindKind, Closure, Env, Flat, FlatKind, Sort, Term, Var

__all__ = [
    "term_key",
    "env_key",
    "closure_key",
    "enumerate_terms",
    "enumerate_envs",
    "enumerate_closures",
]


def term_key(t: Term) -> tuple:
    """Total-order key on terms (atoms first, then by kind and children)."""

    match t:
        case Sort(k):
            return (0, k)
        case Var(i):
            return (1, i)
        case Bind(kind, side, body):
            return (2, int(kind), term_key(side), term_key(body))
        case Flat(kind, side, body):
            return (3, int(kind), term_key(side), term_key(body))
    raise TypeError(f"not a term: {t!r}")


def env_key(env: Env) -> tuple:
    """Total-order key on environments (by length, then entrywise)."""

    return (len(env), tuple((int(kind), term_key(side)) for kind, side in env))


def closure_key(c: Closure) -> tuple:
    return (*env_key(c.env), term_key(c.term))


def _atoms(max_sort: int, max_ref: int) -> list[Term]:
    out: list[Term] = [Sort(k) for k in range(max_sort + 1)]
    out.extend(Var(i) for i in range(max_ref))
    return out


def enumerate_terms(max_size: int, max_sort: int, max_ref: int) -> list[Term]:
    """All terms with at most ``max_size`` constructors, sorts ``<= max_sort``,
    reference depths ``< max_ref``, ordered by :func:`term_key`."""

    by_size: list[list[Term]] = [[]]
    if max_size >= 1:
        by_size.append(_atoms(max_sort, max_ref))
    for size in range(2, max_size + 1):
        layer: list[Term] = []
        for left in range(1, size - 1):
            right = size - 1 - left
            for side in by_size[left]:
                for body in by_size[right]:
                    for kind in BindKind:
                        layer.append(Bind(kind, side, body))
                    for kind in FlatKind:
                        layer.append(Flat(kind, side, body))
        by_size.append(layer)
    every = [t for layer in by_size for t in layer]
    every.sort(key=term_key)
    return every


def enumerate_envs(max_len: int, max_entry_size: int, max_sort: int, max_ref: int) -> list[Env]:
    entries = [
        (kind, t)
        for t in enumerate_terms(max_entry_size, max_sort, max_ref)
        for kind in BindKind
    ]
    layers: list[list[Env]] = [[()]]
    for _ in range(max_len):
        layers.append([env + (e,) for env in layers[-1] for e in entries])
    return [env for layer in layers for env in layer]


def enumerate_closures(max_term_size: int, max_env_len: int, max_sort: int) -> Iterator[Closure]:
    """Yield every closure within the given bounds, in a fixed total order.

    Terms have at most ``max_term_size`` constructors, sort indices are at
    most ``max_sort``, reference depths are below ``max_env_len +
    max_term_size``.  Environments have at most ``max_env_len`` entries
    whose side terms have at most 2 constructors under the same atom
    bounds.
    """

    max_ref = max_env_len + max_term_size
    terms = enumerate_terms(max_term_size, max_sort, max_ref)
    envs = enumerate_envs(max_env_len, 2, max_sort, max_ref)
    closures = [Closure(env, t) for env in envs for t in terms]
    closures.sort(key=closure_key)
    return iter(closures)
