"""Extended parallel reduction and lazy environment equivalence.

Extended reduction adds three redexes on top of plain parallel reduction:

* s     — bump a sort of positive degree to its successor sort;
* delta — now also unfolds *declaration* entries, replacing the reference
  with its expected type;
* e     — from a cast, keep the annotation instead of the term.

These are the steps that static types take, so strong normalization of
extended reduction (``csx_certify``) is the property the stratified-validity
layer leans on.  Lazy equivalence (``lleq_holds``) identifies environments
that agree on every entry a term hereditarily refers to (``frees_holds``),
and ``lsx_certify``/``lcosx_certify`` certify that environment reduction
cannot change a term's referred entries forever.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import BudgetExceeded
from .relocation import delift, lift
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
    term_size,
)
from .traversal import Cycle, SnReport, explore
from .universe import env_key, term_key

__all__ = [
    "cpx_reducts",
    "cpx_holds",
    "lpx_reducts",
    "lpx_holds",
    "cnx_holds",
    "csx_certify",
    "frees_holds",
    "frees_indices",
    "lleq_holds",
    "llor",
    "lsx_certify",
    "lcosx_certify",
    "Cycle",
    "SnReport",
]

_CPX: dict[tuple[int, int, Env, Term], frozenset[Term]] = {}
_CPX_BOUNDED: dict[tuple[int, int, Env, Term, int], tuple[frozenset[Term], bool]] = {}

# Slack added to the root size when scanning for small cycles.  Parallel
# reduct sets grow multiplicatively with term size, so certifiers look for
# a cycle among reducts near the root's size before attempting the (often
# much larger, possibly infinite) full reachable graph.
CYCLE_SCAN_SLACK = 8


def _guard(n: int, budget: int) -> None:
    if n > budget:
        raise BudgetExceeded(f"reduct set would exceed {budget} elements")


def cpx_reducts(params: Params, env: Env, term: Term) -> frozenset[Term]:
    """All one-step extended parallel reducts of ``term`` (incl. itself)."""

    return _cpx(params.c, params.big_d, env, term, params.budget)


def _cpx(c: int, big_d: int, env: Env, term: Term, budget: int) -> frozenset[Term]:
    key = (c, big_d, env, term)
    got = _CPX.get(key)
    if got is None:
        got = frozenset(_xreducts(c, big_d, env, term, budget))
        _CPX[key] = got
    _guard(len(got), budget)
    return got


def _xreducts(c: int, big_d: int, env: Env, term: Term, budget: int) -> set[Term]:
    out: set[Term] = set()
    match term:
        case Sort(k):
            out.add(term)
            if max(big_d - k // c, 0) >= 1:
                out.add(Sort(k + c))
        case Var(i):
            out.add(term)
            if i < len(env):
                for v2 in _cpx(c, big_d, env[i + 1 :], env[i][1], budget):
                    out.add(lift(0, i + 1, v2))
        case Bind(kind, side, body):
            sides = _cpx(c, big_d, env, side, budget)
            bodies = _cpx(c, big_d, env_push(env, kind, side), body, budget)
            _guard(len(sides) * len(bodies), budget)
            for s2, b2 in product(sides, bodies):
                out.add(Bind(kind, s2, b2))
            if kind == BindKind.ABBR:
                for b2 in bodies:
                    dropped = delift(0, 1, b2)
                    if dropped is not None:
                        out.add(dropped)
        case Flat(FlatKind.CAST, side, body):
            sides = _cpx(c, big_d, env, side, budget)
            bodies = _cpx(c, big_d, env, body, budget)
            _guard(len(sides) * len(bodies), budget)
            for s2, b2 in product(sides, bodies):
                out.add(Flat(FlatKind.CAST, s2, b2))
            out |= bodies
            out |= sides
        case Flat(FlatKind.APPL, side, body):
            args = _cpx(c, big_d, env, side, budget)
            funs = _cpx(c, big_d, env, body, budget)
            _guard(len(args) * len(funs), budget)
            for v2, t2 in product(args, funs):
                out.add(Flat(FlatKind.APPL, v2, t2))
            match body:
                case Bind(BindKind.ABST, w, u):
                    doms = _cpx(c, big_d, env, w, budget)
                    bodies = _cpx(c, big_d, env_push(env, BindKind.ABST, w), u, budget)
                    _guard(len(args) * len(doms) * len(bodies), budget)
                    for v2, w2, u2 in product(args, doms, bodies):
                        out.add(Bind(BindKind.ABBR, Flat(FlatKind.CAST, w2, v2), u2))
                case Bind(BindKind.ABBR, u, s):
                    defs = _cpx(c, big_d, env, u, budget)
                    bodies = _cpx(c, big_d, env_push(env, BindKind.ABBR, u), s, budget)
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


def cpx_holds(params: Params, env: Env, t1: Term, t2: Term) -> bool:
    """Decide one extended parallel step without enumerating the reduct
    set, by matching the target against each way a step can produce it."""

    return _step_to(params.c, params.big_d, env, t1, t2)


_STEP: dict[tuple[int, int, Env, Term, Term], bool] = {}


def _step_to(c: int, big_d: int, env: Env, t1: Term, t2: Term) -> bool:
    if t1 == t2:
        return True
    key = (c, big_d, env, t1, t2)
    got = _STEP.get(key)
    if got is None:
        got = _step_to_raw(c, big_d, env, t1, t2)
        _STEP[key] = got
    return got


def _step_to_raw(c: int, big_d: int, env: Env, t1: Term, t2: Term) -> bool:
    match t1:
        case Sort(k):
            return t2 == Sort(k + c) and max(big_d - k // c, 0) >= 1
        case Var(i):
            if i >= len(env):
                return False
            v2 = delift(0, i + 1, t2)
            return v2 is not None and _step_to(c, big_d, env[i + 1 :], env[i][1], v2)
        case Bind(kind, side, body):
            inner = env_push(env, kind, side)
            match t2:
                case Bind(kind2, s2, b2) if kind2 == kind:
                    if _step_to(c, big_d, env, side, s2) and _step_to(
                        c, big_d, inner, body, b2
                    ):
                        return True
            if kind == BindKind.ABBR and _step_to(c, big_d, inner, body, lift(0, 1, t2)):
                return True
            return False
        case Flat(FlatKind.CAST, side, body):
            match t2:
                case Flat(FlatKind.CAST, s2, b2):
                    if _step_to(c, big_d, env, side, s2) and _step_to(
                        c, big_d, env, body, b2
                    ):
                        return True
            return _step_to(c, big_d, env, body, t2) or _step_to(c, big_d, env, side, t2)
        case Flat(FlatKind.APPL, side, body):
            match t2:
                case Flat(FlatKind.APPL, v2, b2):
                    if _step_to(c, big_d, env, side, v2) and _step_to(
                        c, big_d, env, body, b2
                    ):
                        return True
            match body:
                case Bind(BindKind.ABST, w, u):
                    match t2:
                        case Bind(BindKind.ABBR, Flat(FlatKind.CAST, w2, v2), u2):
                            if (
                                _step_to(c, big_d, env, w, w2)
                                and _step_to(c, big_d, env, side, v2)
                                and _step_to(
                                    c, big_d, env_push(env, BindKind.ABST, w), u, u2
                                )
                            ):
                                return True
                case Bind(BindKind.ABBR, u, s):
                    match t2:
                        case Bind(BindKind.ABBR, u2, Flat(FlatKind.APPL, a2, s2)):
                            v2 = delift(0, 1, a2)
                            if (
                                v2 is not None
                                and _step_to(c, big_d, env, side, v2)
                                and _step_to(c, big_d, env, u, u2)
                                and _step_to(
                                    c, big_d, env_push(env, BindKind.ABBR, u), s, s2
                                )
                            ):
                                return True
            return False
    raise TypeError(f"not a term: {t1!r}")


def _pairs(xs: list[Term], ys: list[Term], room: int):
    """Pairs from size-sorted lists with combined size at most ``room``,
    plus a flag telling whether any pair was skipped."""

    skipped = False
    for x in xs:
        nx = term_size(x)
        if nx + 1 > room:
            skipped = True
            break
        for y in ys:
            if nx + term_size(y) > room:
                skipped = True
                break
            yield x, y
    if skipped or (xs and not ys) or (ys and not xs):
        yield None, None


def _cpx_bounded(
    c: int, big_d: int, env: Env, term: Term, cap: int, budget: int
) -> tuple[frozenset[Term], bool]:
    """Reducts of size at most ``cap`` plus a flag: was anything pruned?

    A False flag certifies the bounded set is the full reduct set, so a
    traversal built on these sets is exhaustive, not just a cycle scan.
    """

    key = (c, big_d, env, term, cap)
    got = _CPX_BOUNDED.get(key)
    if got is None:
        out: set[Term] = set()
        pruned = False

        def sub(e: Env, t: Term) -> list[Term]:
            nonlocal pruned
            inner, inner_pruned = _cpx_bounded(c, big_d, e, t, cap, budget)
            pruned = pruned or inner_pruned
            return sorted(inner, key=term_size)

        def combine(xs: list[Term], ys: list[Term], room: int):
            nonlocal pruned
            for x, y in _pairs(xs, ys, room):
                if x is None:
                    pruned = True
                    return
                yield x, y

        match term:
            case Sort(k):
                out.add(term)
                if max(big_d - k // c, 0) >= 1:
                    out.add(Sort(k + c))
            case Var(i):
                out.add(term)
                if i < len(env):
                    for v2 in sub(env[i + 1 :], env[i][1]):
                        out.add(lift(0, i + 1, v2))
            case Bind(kind, side, body):
                sides = sub(env, side)
                bodies = sub(env_push(env, kind, side), body)
                for s2, b2 in combine(sides, bodies, cap - 1):
                    out.add(Bind(kind, s2, b2))
                if kind == BindKind.ABBR:
                    for b2 in bodies:
                        dropped = delift(0, 1, b2)
                        if dropped is not None:
                            out.add(dropped)
            case Flat(FlatKind.CAST, side, body):
                sides = sub(env, side)
                bodies = sub(env, body)
                for s2, b2 in combine(sides, bodies, cap - 1):
                    out.add(Flat(FlatKind.CAST, s2, b2))
                out.update(bodies)
                out.update(sides)
            case Flat(FlatKind.APPL, side, body):
                args = sub(env, side)
                funs = sub(env, body)
                for v2, t2 in combine(args, funs, cap - 1):
                    out.add(Flat(FlatKind.APPL, v2, t2))
                match body:
                    case Bind(BindKind.ABST, w, u):
                        doms = sub(env, w)
                        us = sub(env_push(env, BindKind.ABST, w), u)
                        for v2, w2 in combine(args, doms, cap - 3):
                            room = cap - 2 - term_size(v2) - term_size(w2)
                            for u2 in us:
                                if term_size(u2) > room:
                                    pruned = True
                                    break
                                out.add(
                                    Bind(
                                        BindKind.ABBR,
                                        Flat(FlatKind.CAST, w2, v2),
                                        u2,
                                    )
                                )
                    case Bind(BindKind.ABBR, u, s):
                        defs = sub(env, u)
                        ss = sub(env_push(env, BindKind.ABBR, u), s)
                        for u2, s2 in combine(defs, ss, cap - 3):
                            room = cap - 2 - term_size(u2) - term_size(s2)
                            for a2 in args:
                                if term_size(a2) > room:
                                    pruned = True
                                    break
                                out.add(
                                    Bind(
                                        BindKind.ABBR,
                                        u2,
                                        Flat(FlatKind.APPL, lift(0, 1, a2), s2),
                                    )
                                )
        _guard(len(out), budget)
        got = (frozenset(out), pruned)
        _CPX_BOUNDED[key] = got
    return got


def lpx_reducts(params: Params, env: Env) -> frozenset[Env]:
    """One extended step inside the entries, each in its own outer
    environment, kinds unchanged."""

    choices = []
    total = 1
    for i, (kind, side) in enumerate(env):
        reducts = cpx_reducts(params, env[i + 1 :], side)
        total *= len(reducts)
        _guard(total, params.budget)
        choices.append([(kind, s2) for s2 in reducts])
    return frozenset(tuple(picked) for picked in product(*choices))


def lpx_holds(params: Params, env1: Env, env2: Env) -> bool:
    if len(env1) != len(env2):
        return False
    return all(
        k1 == k2 and _step_to(params.c, params.big_d, env1[i + 1 :], s1, s2)
        for i, ((k1, s1), (k2, s2)) in enumerate(zip(env1, env2))
    )


def cnx_holds(params: Params, env: Env, term: Term) -> bool:
    """Normal for extended reduction: the only reduct is the term itself.

    Equivalent to having no single-redex step: every such step yields a
    different term, and a proper parallel step factors into at least one.
    """

    return next(_seq_steps(params.c, params.big_d, env, term), None) is None


def _size_key(t: Term) -> tuple:
    return (term_size(t), term_key(t))


def _seq_steps(c: int, big_d: int, env: Env, term: Term):
    """Single-redex steps, the sequential skeleton of extended reduction.

    Every such step is an extended parallel step, and every parallel step
    factors into these, so both relations reach the same terms and have
    the same cycles.  The fan-out is linear in the term size, which makes
    this the relation of choice when scanning for a cycle.
    """

    match term:
        case Sort(k):
            if max(big_d - k // c, 0) >= 1:
                yield Sort(k + c)
        case Var(i):
            if i < len(env):
                yield lift(0, i + 1, env[i][1])
        case Bind(kind, side, body):
            for s2 in _seq_steps(c, big_d, env, side):
                yield Bind(kind, s2, body)
            for b2 in _seq_steps(c, big_d, env_push(env, kind, side), body):
                yield Bind(kind, side, b2)
            if kind == BindKind.ABBR:
                dropped = delift(0, 1, body)
                if dropped is not None:
                    yield dropped
        case Flat(FlatKind.CAST, side, body):
            for s2 in _seq_steps(c, big_d, env, side):
                yield Flat(FlatKind.CAST, s2, body)
            for b2 in _seq_steps(c, big_d, env, body):
                yield Flat(FlatKind.CAST, side, b2)
            yield body
            yield side
        case Flat(FlatKind.APPL, side, body):
            for v2 in _seq_steps(c, big_d, env, side):
                yield Flat(FlatKind.APPL, v2, body)
            for t2 in _seq_steps(c, big_d, env, body):
                yield Flat(FlatKind.APPL, side, t2)
            match body:
                case Bind(BindKind.ABST, w, u):
                    yield Bind(BindKind.ABBR, Flat(FlatKind.CAST, w, side), u)
                case Bind(BindKind.ABBR, u, s):
                    yield Bind(
                        BindKind.ABBR, u, Flat(FlatKind.APPL, lift(0, 1, side), s)
                    )


# Depth of the pre-traversal cycle scan: paths of single-redex steps this
# long are probed for a parallel step closing back onto the path.
CYCLE_SCAN_DEPTH = 4


def _cycle_scan(params: Params, env: Env, root: Term) -> Cycle | None:
    """Look for a short cycle before attempting exhaustive traversal.

    Walks single-redex steps (small fan-out) to a fixed depth and asks, at
    each node, whether one *parallel* step returns to a node on the current
    path — decidable by matching, without enumerating reduct sets.  Finding
    one refutes strong normalization outright; finding none proves nothing.
    """

    cap = term_size(root) + CYCLE_SCAN_SLACK
    seen: set[Term] = set()
    path: list[Term] = []

    def visit(t: Term, depth: int) -> Cycle | None:
        for idx, back in enumerate(path):
            if _step_to(params.c, params.big_d, env, t, back):
                return Cycle(tuple(path[idx:] + [t]))
        if depth == 0 or t in seen:
            return None
        seen.add(t)
        path.append(t)
        try:
            steps = sorted(
                {
                    r
                    for r in _seq_steps(params.c, params.big_d, env, t)
                    if r != t and term_size(r) <= cap
                },
                key=_size_key,
            )
            for s in steps:
                got = visit(s, depth - 1)
                if got is not None:
                    return got
        finally:
            path.pop()
        return None

    return visit(root, CYCLE_SCAN_DEPTH)


def csx_certify(params: Params, env: Env, term: Term) -> SnReport | Cycle:
    """Certify strong normalization of extended reduction from ``term``.

    Explores every term reachable by proper (non-identity) extended steps;
    a finite acyclic graph proves termination of every reduction sequence
    because branching is finite.  The walk runs in phases: first a cheap
    bounded-depth cycle scan (any cycle it finds is a genuine cycle), then
    the parallel-step graph restricted to terms near the root's size
    (exact when nothing gets pruned), and only then the full parallel
    graph, which may be far larger or infinite.
    """

    got = _cycle_scan(params, env, term)
    if got is not None:
        return got

    cap = term_size(term) + CYCLE_SCAN_SLACK
    clean = True

    def bounded_successors(t: Term) -> list[Term]:
        nonlocal clean
        got, pruned = _cpx_bounded(params.c, params.big_d, env, t, cap, params.budget)
        if pruned:
            clean = False
        return sorted((r for r in got if r != t), key=_size_key)

    got = explore(term, bounded_successors, params.budget)
    if isinstance(got, Cycle):
        return got
    if clean:
        nodes, _, depth = got
        return SnReport(nodes, depth)

    def successors(t: Term) -> list[Term]:
        return sorted((r for r in cpx_reducts(params, env, t) if r != t), key=_size_key)

    got = explore(term, successors, params.budget)
    if isinstance(got, Cycle):
        return got
    nodes, _, depth = got
    return SnReport(nodes, depth)


@lru_cache(maxsize=None)
def frees_holds(i: int, l: int, env: Env, term: Term) -> bool:
    """Is reference ``i`` hereditarily free in ``term`` at level ``l``?

    Either ``i`` occurs in the term itself (delift fails), or the term
    refers — at or above the level — to an entry whose side refers on.
    """

    if delift(i, 1, term) is None:
        return True
    for j in range(l, min(i, len(env))):
        if delift(j, 1, term) is None and frees_holds(
            i - j - 1, 0, env[j + 1 :], env[j][1]
        ):
            return True
    return False


def frees_indices(l: int, env: Env, term: Term, bound: int) -> frozenset[int]:
    """The hereditarily free references below ``bound``."""

    return frozenset(i for i in range(bound) if frees_holds(i, l, env, term))


def lleq_holds(l: int, term: Term, env1: Env, env2: Env) -> bool:
    """Lazy equivalence: same length, and identical entries at every index
    ``>= l`` the term hereditarily refers to in ``env1``."""

    if len(env1) != len(env2):
        return False
    return all(
        env1[i] == env2[i]
        for i in range(l, len(env1))
        if frees_holds(i, l, env1, term)
    )


def llor(l: int, term: Term, env1: Env, env2: Env) -> Env | None:
    """Pointwise union: referred entries at or above the level come from
    ``env2``, all others from ``env1``; defined iff lengths agree."""

    if len(env1) != len(env2):
        return None
    return tuple(
        env2[i] if i >= l and frees_holds(i, l, env1, term) else env1[i]
        for i in range(len(env1))
    )


def lsx_certify(params: Params, l: int, term: Term, env: Env) -> SnReport | Cycle:
    """Certify that extended environment steps which break lazy equivalence
    with respect to ``term`` cannot be chained forever from ``env``."""

    def successors(e1: Env) -> list[Env]:
        return sorted(
            (e2 for e2 in lpx_reducts(params, e1) if not lleq_holds(l, term, e1, e2)),
            key=env_key,
        )

    got = explore(env, successors, params.budget)
    if isinstance(got, Cycle):
        return got
    nodes, _, depth = got
    return SnReport(nodes, depth)


def lcosx_certify(params: Params, l: int, env: Env) -> bool | Cycle:
    """Certify every entry below level ``l``: entry ``i`` needs an lsx
    certificate at level ``l - i - 1`` in its own outer environment.
    Trivially true at level 0 or on the empty environment."""

    if l == 0 or not env:
        return True
    got = lsx_certify(params, l - 1, env[0][1], env[1:])
    if isinstance(got, Cycle):
        return got
    return lcosx_certify(params, l - 1, env[1:])
