"""Relocation of de Bruijn references and the matching environment slicing.

``lift(l, m, t)`` shifts every reference of ``t`` at depth ``l`` or deeper
up by ``m``; ``delift`` is its partial inverse.  ``drop(l, m, env)``
removes the ``m`` entries found at depth ``l``, delifting the entries kept
below them; it is the environment counterpart of ``lift`` and is partial as
well.  Partial operations return ``None`` when undefined.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .terms import Bind, Env, Flat, Sort, Term, Var

__all__ = [
    "RelocPair",
    "lift",
    "delift",
    "liftv",
    "lifts",
    "drop",
    "drops",
    "lreq",
]

# A relocation pair (level, height).
RelocPair = tuple[int, int]


def lift(l: int, m: int, t: Term) -> Term:
    match t:
        case Sort(_):
            return t
        case Var(i):
            return Var(i + m) if i >= l else t
        case Bind(kind, side, body):
            return Bind(kind, lift(l, m, side), lift(l + 1, m, body))
        case Flat(kind, side, body):
            return Flat(kind, lift(l, m, side), lift(l, m, body))
    raise TypeError(f"not a term: {t!r}")


def delift(l: int, m: int, t: Term) -> Optional[Term]:
    """The unique ``u`` with ``lift(l, m, u) == t``, or ``None``.

    Undefined exactly when ``t`` has a reference in the band
    ``l <= i < l + m``.
    """

    match t:
        case Sort(_):
            return t
        case Var(i):
            if i < l:
                return t
            if i >= l + m:
                return Var(i - m)
            return None
        case Bind(kind, side, body) | Flat(kind, side, body):
            side2 = delift(l, m, side)
            if side2 is None:
                return None
            body2 = delift(l + 1 if isinstance(t, Bind) else l, m, body)
            if body2 is None:
                return None
            return type(t)(kind, side2, body2)
    raise TypeError(f"not a term: {t!r}")


def liftv(l: int, m: int, ts: tuple[Term, ...]) -> tuple[Term, ...]:
    """Relocate a vector of terms at the same level and height."""

    return tuple(lift(l, m, t) for t in ts)


def lifts(pairs: Iterable[RelocPair], t: Term) -> Term:
    """Apply a list of relocation pairs left to right."""

    for l, m in pairs:
        t = lift(l, m, t)
    return t


def drop(l: int, m: int, env: Env) -> Optional[Env]:
    """Remove the ``m`` entries at depth ``l``; ``None`` when impossible.

    The entries above the removed band stay as they are (the caller reads
    them at the same depths), while each of the ``l`` entries kept below it
    gets delifted, which fails when such an entry refers into the band.
    """

    if l == 0:
        if m == 0:
            return env
        if not env:
            return None
        return drop(0, m - 1, env[1:])
    if not env:
        return env if m == 0 else None
    kind, side = env[0]
    side2 = delift(l - 1, m, side)
    if side2 is None:
        return None
    rest = drop(l - 1, m, env[1:])
    if rest is None:
        return None
    return ((kind, side2),) + rest


def drops(pairs: Iterable[RelocPair], env: Env) -> Optional[Env]:
    """Apply a list of drops left to right; ``None`` if any step fails."""

    out: Optional[Env] = env
    for l, m in pairs:
        if out is None:
            return None
        out = drop(l, m, out)
    return out


def lreq(l: int, m: int, env1: Env, env2: Env) -> bool:
    """Equal length and identical entries at depths ``l <= i < l + m``."""

    if len(env1) != len(env2):
        return False
    hi = min(l + m, len(env1))
    return env1[l:hi] == env2[l:hi]
