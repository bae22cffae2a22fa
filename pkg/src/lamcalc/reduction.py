"""Parallel reduction.

``cpr_reducts`` enumerates every term reachable from a closure in one step
of parallel reduction, which contracts any number of redexes at once.  The
redexes are:

* delta — unfold a reference to a definition entry;
* beta  — ``appl v (abst w t)`` steps to ``abbr (cast w v) t``, keeping
  the annotated argument as a definition;
* zeta  — drop a definition binder no longer referred to by its body;
* eps   — drop a type annotation;
* theta — push an application argument under a definition binder.

``lpr_reducts`` applies the same relation inside environment entries.
``cpr_full`` is the deterministic maximal development used by the fueled
normalizer, and ``conv`` compares normal forms.  ``lsubr_holds`` is the
refinement on environments that preserves reduction.
"""

from __future__ import annotations

from itertools import product

from .errors import BudgetExceeded, FuelExhausted
from .relocation import delift, lift
from .terms import (
    Bind,
    BindKind,
    Env,
    Flat,
    FlatKind,
    Sort,
    Term,
    Var,
    env_push,
)

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_FUEL",
    "cpr_reducts",
    "cpr_holds",
    "lpr_reducts",
    "lpr_holds",
    "cpr_full",
    "normalize",
    "cprs_holds",
    "conv",
    "lsubr_holds",
]

DEFAULT_BUDGET = 100000
DEFAULT_FUEL = 1000

_REDUCTS: dict[tuple[Env, Term], frozenset[Term]] = {}
_FULL: dict[tuple[Env, Term], Term] = {}
_NF: dict[tuple[Env, Term], Term] = {}


def _guard(n: int, budget: int) -> None:
    if n > budget:
        raise BudgetExceeded(f"reduct set would exceed {budget} elements")


def cpr_reducts(env: Env, term: Term, budget: int = DEFAULT_BUDGET) -> frozenset[Term]:
    """All one-step parallel reducts of ``term`` in ``env`` (incl. itself)."""

    key = (env, term)
    got = _REDUCTS.get(key)
    if got is None:
        got = frozenset(_reducts(env, term, budget))
        _REDUCTS[key] = got
    _guard(len(got), budget)
    return got


def _reducts(env: Env, term: Term, budget: int) -> set[Term]:
    out: set[Term] = set()
    match term:
        case Sort(_):
            out.add(term)
        case Var(i):
            out.add(term)
            if i < len(env) and env[i][0] == BindKind.ABBR:
                for v2 in cpr_reducts(env[i + 1 :], env[i][1], budget):
                    out.add(lift(0, i + 1, v2))
        case Bind(kind, side, body):
            sides = cpr_reducts(env, side, budget)
            bodies = cpr_reducts(env_push(env, kind, side), body, budget)
            _guard(len(sides) * len(bodies), budget)
            for s2, b2 in product(sides, bodies):
                out.add(Bind(kind, s2, b2))
            if kind == BindKind.ABBR:
                for b2 in bodies:
                    dropped = delift(0, 1, b2)
                    if dropped is not None:
                        out.add(dropped)
        case Flat(FlatKind.CAST, side, body):
            sides = cpr_reducts(env, side, budget)
            bodies = cpr_reducts(env, body, budget)
            _guard(len(sides) * len(bodies), budget)
            for s2, b2 in product(sides, bodies):
                out.add(Flat(FlatKind.CAST, s2, b2))
            out |= bodies
        case Flat(FlatKind.APPL, side, body):
            args = cpr_reducts(env, side, budget)
            funs = cpr_reducts(env, body, budget)
            _guard(len(args) * len(funs), budget)
            for v2, t2 in product(args, funs):
                out.add(Flat(FlatKind.APPL, v2, t2))
            match body:
                case Bind(BindKind.ABST, w, u):
                    doms = cpr_reducts(env, w, budget)
                    bodies = cpr_reducts(env_push(env, BindKind.ABST, w), u, budget)
                    _guard(len(args) * len(doms) * len(bodies), budget)
                    for v2, w2, u2 in product(args, doms, bodies):
                        out.add(Bind(BindKind.ABBR, Flat(FlatKind.CAST, w2, v2), u2))
                case Bind(BindKind.ABBR, u, s):
                    defs = cpr_reducts(env, u, budget)
                    bodies = cpr_reducts(env_push(env, BindKind.ABBR, u), s, budget)
                    _guard(len(args) * len(defs) * len(bodies), budget)
                    for v2, u2, s2 in product(args, defs, bodies):
                        out.add(
                            Bind(
                                BindKind.ABBR,
                                u2,
                                Flat(FlatKind.APPL, lift(0, 1, v2), s2),
                            )
                        )
    _guard(len(out), budget)
    return out


def cpr_holds(env: Env, t1: Term, t2: Term, budget: int = DEFAULT_BUDGET) -> bool:
    return t2 in cpr_reducts(env, t1, budget)


def lpr_reducts(env: Env, budget: int = DEFAULT_BUDGET) -> frozenset[Env]:
    """One parallel step inside the entries; each entry reduces in its own
    outer environment, kinds unchanged."""

    choices = []
    total = 1
    for i, (kind, side) in enumerate(env):
        reducts = cpr_reducts(env[i + 1 :], side, budget)
        total *= len(reducts)
        _guard(total, budget)
        choices.append([(kind, s2) for s2 in reducts])
    return frozenset(tuple(picked) for picked in product(*choices))


def lpr_holds(env1: Env, env2: Env, budget: int = DEFAULT_BUDGET) -> bool:
    return env2 in lpr_reducts(env1, budget)


def cpr_full(env: Env, term: Term) -> Term:
    """Maximal development: develop every subterm, then contract the top
    redex, preferring zeta, then beta, theta, eps, delta."""

    key = (env, term)
    got = _FULL.get(key)
    if got is None:
        got = _full(env, term)
        _FULL[key] = got
    return got


def _full(env: Env, term: Term) -> Term:
    match term:
        case Sort(_):
            return term
        case Var(i):
            if i < len(env) and env[i][0] == BindKind.ABBR:
                return lift(0, i + 1, cpr_full(env[i + 1 :], env[i][1]))
            return term
        case Bind(BindKind.ABBR, side, body):
            body2 = cpr_full(env_push(env, BindKind.ABBR, side), body)
            dropped = delift(0, 1, body2)
            if dropped is not None:
                return dropped
            return Bind(BindKind.ABBR, cpr_full(env, side), body2)
        case Bind(BindKind.ABST, side, body):
            return Bind(
                BindKind.ABST,
                cpr_full(env, side),
                cpr_full(env_push(env, BindKind.ABST, side), body),
            )
        case Flat(FlatKind.APPL, side, body):
            match body:
                case Bind(BindKind.ABST, w, u):
                    return Bind(
                        BindKind.ABBR,
                        Flat(FlatKind.CAST, cpr_full(env, w), cpr_full(env, side)),
                        cpr_full(env_push(env, BindKind.ABST, w), u),
                    )
                case Bind(BindKind.ABBR, u, s):
                    return Bind(
                        BindKind.ABBR,
                        cpr_full(env, u),
                        Flat(
                            FlatKind.APPL,
                            lift(0, 1, cpr_full(env, side)),
                            cpr_full(env_push(env, BindKind.ABBR, u), s),
                        ),
                    )
                case _:
                    return Flat(FlatKind.APPL, cpr_full(env, side), cpr_full(env, body))
        case Flat(FlatKind.CAST, _, body):
            return cpr_full(env, body)
    raise TypeError(f"not a term: {term!r}")


def normalize(env: Env, term: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Iterate cpr_full to a fixpoint; raise FuelExhausted past ``fuel``."""

    key = (env, term)
    got = _NF.get(key)
    if got is not None:
        return got
    t = term
    for _ in range(fuel + 1):
        t2 = cpr_full(env, t)
        if t2 == t:
            _NF[key] = t
            return t
        t = t2
    raise FuelExhausted(f"no normal form within {fuel} rounds")


def cprs_holds(env: Env, t1: Term, t2: Term, budget: int = DEFAULT_BUDGET) -> bool:
    """Breadth-first: is ``t2`` reachable from ``t1`` by parallel steps?"""

    if t1 == t2:
        return True
    seen = {t1}
    frontier = [t1]
    while frontier:
        fresh = []
        for t in frontier:
            reducts = cpr_reducts(env, t)
            if t2 in reducts:
                return True
            for r in reducts:
                if r not in seen:
                    seen.add(r)
                    _guard(len(seen), budget)
                    fresh.append(r)
        frontier = fresh
    return False


def conv(env: Env, t1: Term, t2: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """Conversion via unique normal forms."""

    return normalize(env, t1, fuel) == normalize(env, t2, fuel)


def lsubr_holds(env1: Env, env2: Env) -> bool:
    """Refinement for reduction: ``env1`` may turn declarations of ``env2``
    into definitions by annotated terms, and may carry extra outer entries."""

    if not env2:
        return True
    if not env1:
        return False
    head1, head2 = env1[0], env2[0]
    if head1 != head2:
        match head1, head2:
            case (
                (BindKind.ABBR, Flat(FlatKind.CAST, w1, _)),
                (BindKind.ABST, w2),
            ) if w1 == w2:
                pass
            case _:
                return False
    return lsubr_holds(env1[1:], env2[1:])
