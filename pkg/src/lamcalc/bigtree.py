"""Closure graphs combining subterm descent with reduction.

A closure steps to its direct subclosures, to reducts of its term, and to
environments reduced in a way its term can observe.  The union is finitely
branching, and certifying that no infinite chain leaves a closure amounts
to exhausting its reachable graph and finding it acyclic — the closure
analogue of :func:`lamcalc.extended.csx_certify`, staged the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded
from .extended import (
    CYCLE_SCAN_SLACK,
    Cycle,
    _cpx_bounded,
    _seq_steps,
    _step_to,
    cpx_reducts,
    lleq_holds,
    lpx_holds,
    lpx_reducts,
)
from .relocation import delift
from .sexpr import print_env, print_term
from .terms import (
    Bind,
    Closure,
    Env,
    Flat,
    Params,
    Term,
    Var,
    closure_measure,
    env_push,
    term_size,
)
from .traversal import explore
from .universe import closure_key

__all__ = [
    "BigTreeReport",
    "fpb_successors",
    "fpbq_holds",
    "fqu_children",
    "fqus_holds",
    "fquq_holds",
    "fsb_certify",
    "fsb_graph",
]


@dataclass(frozen=True)
class BigTreeReport:
    """Certificate that no infinite chain of proper steps leaves a closure.

    ``nodes`` and ``edges`` describe the reachable graph (a dag, not a
    tree, so ``edges`` can exceed ``nodes - 1``); ``max_depth`` is its
    longest path.
    """

    nodes: int
    edges: int
    max_depth: int


def fqu_children(env: Env, term: Term) -> frozenset[Closure]:
    """The direct subclosures of ``(env, term)``.

    Sides and bodies of binary constructors (a binder's body under the
    extended environment), the entry closure when the term is the
    innermost reference, and every closure obtained by dropping a prefix
    of entries the term does not mention.  Each child has a strictly
    smaller :func:`closure_measure`, which is what recursion over
    subclosures rests on.
    """

    out: set[Closure] = set()
    match term:
        case Var(0) if env:
            out.add(Closure(env[1:], env[0][1]))
        case Bind(kind, side, body):
            out.add(Closure(env, side))
            out.add(Closure(env_push(env, kind, side), body))
        case Flat(_, side, body):
            out.add(Closure(env, side))
            out.add(Closure(env, body))
    for m in range(len(env)):
        dropped = delift(0, m + 1, term)
        if dropped is not None:
            out.add(Closure(env[m + 1 :], dropped))
    return frozenset(out)


def fquq_holds(c1: Closure, c2: Closure) -> bool:
    """Direct subclosure or equality."""

    return c1 == c2 or c2 in fqu_children(*c1)


def fqus_holds(c1: Closure, c2: Closure, budget: int) -> bool:
    """Is ``c2`` an iterated subclosure of ``c1`` (reflexively)?"""

    seen = {c1}
    frontier = [c1]
    while frontier:
        if c2 in seen:
            return True
        fresh = []
        for c in frontier:
            for child in fqu_children(*c):
                if child not in seen:
                    seen.add(child)
                    if len(seen) > budget:
                        raise BudgetExceeded(
                            f"more than {budget} iterated subclosures"
                        )
                    fresh.append(child)
        frontier = fresh
    return c2 in seen


def fpb_successors(params: Params, env: Env, term: Term) -> frozenset[Closure]:
    """One proper step out of a closure.

    A direct subclosure, a proper reduct of the term, or an environment
    reduct that the term observes — one whose change breaks lazy
    equivalence.  Equivalence-preserving environment steps are deliberately
    not successors: they have unboundedly many partners and cannot break
    or create an infinite chain, so certification may ignore them.
    """

    out: set[Closure] = set(fqu_children(env, term))
    for t2 in cpx_reducts(params, env, term):
        if t2 != term:
            out.add(Closure(env, t2))
    for e2 in lpx_reducts(params, env):
        if not lleq_holds(0, term, env, e2):
            out.add(Closure(e2, term))
    return frozenset(out)


def fpbq_holds(params: Params, c1: Closure, c2: Closure) -> bool:
    """One step between closures, equivalence included.

    Decided rule by rule rather than by enumerating successors, because
    the equivalence rule alone has unboundedly many partners: a term
    reduct over a fixed environment, an environment reduct or a lazily
    equal environment under a fixed term, or a subclosure (reflexively).
    """

    (env1, t1), (env2, t2) = c1, c2
    if env1 == env2 and _step_to(params.c, params.big_d, env1, t1, t2):
        return True
    if t1 == t2 and (
        lpx_holds(params, env1, env2) or lleq_holds(0, t1, env1, env2)
    ):
        return True
    return fquq_holds(c1, c2)


def _fpb_holds(params: Params, c1: Closure, c2: Closure) -> bool:
    """One proper step: like :func:`fpbq_holds` minus every reflexive or
    equivalence-only case, matching :func:`fpb_successors` membership."""

    (env1, t1), (env2, t2) = c1, c2
    if env1 == env2 and t1 != t2 and _step_to(params.c, params.big_d, env1, t1, t2):
        return True
    if (
        t1 == t2
        and not lleq_holds(0, t1, env1, env2)
        and lpx_holds(params, env1, env2)
    ):
        return True
    return c2 in fqu_children(env1, t1)


def _closure_sort_key(c: Closure) -> tuple:
    return (closure_measure(c), closure_key(c))


def _closure_seq_steps(params: Params, c: Closure):
    """Single-redex skeleton of the proper-step relation.

    Subclosures, single-redex term steps, and single-entry single-redex
    environment steps that break lazy equivalence.  Every proper step
    factors into these, so they reach the same closures and have the same
    cycles, with fan-out linear in the closure measure.
    """

    env, term = c
    yield from fqu_children(env, term)
    for t2 in _seq_steps(params.c, params.big_d, env, term):
        if t2 != term:
            yield Closure(env, t2)
    for i, (kind, side) in enumerate(env):
        for s2 in _seq_steps(params.c, params.big_d, env[i + 1 :], side):
            if s2 == side:
                continue
            e2 = env[:i] + ((kind, s2),) + env[i + 1 :]
            if not lleq_holds(0, term, env, e2):
                yield Closure(e2, term)


# The closure-level scan must run deeper than the term-level one: closing
# a loop may first need a definition copied into each of its references,
# the copies' annotations erased, and the spent binder dropped — single-
# redex steps that one parallel step would merge — before a subclosure
# step can return to the redex.
CLOSURE_SCAN_DEPTH = 6


def _closure_scan(params: Params, root: Closure) -> Cycle | None:
    """Look for a short closure cycle before exhaustive traversal.

    Walks single-redex closure steps to a fixed depth, asking at each node
    whether one proper step — parallel reduction, observed environment
    reduction, or subclosure descent — returns to a node on the current
    path.  A hit refutes the certificate outright; a miss proves nothing.
    """

    cap = closure_measure(root) + CYCLE_SCAN_SLACK
    seen: set[Closure] = set()
    path: list[Closure] = []

    def visit(c: Closure, depth: int) -> Cycle | None:
        for idx, back in enumerate(path):
            if _fpb_holds(params, c, back):
                return Cycle(tuple(path[idx:] + [c]))
        if depth == 0 or c in seen:
            return None
        seen.add(c)
        path.append(c)
        try:
            steps = sorted(
                {
                    s
                    for s in _closure_seq_steps(params, c)
                    if s != c and closure_measure(s) <= cap
                },
                key=_closure_sort_key,
            )
            for s in steps:
                got = visit(s, depth - 1)
                if got is not None:
                    return got
        finally:
            path.pop()
        return None

    return visit(root, CLOSURE_SCAN_DEPTH)


def _bounded_successors(
    params: Params, c: Closure, cap: int
) -> tuple[list[Closure], bool]:
    """Proper-step successors restricted to closures of measure ``cap``.

    Returns the sorted list and whether anything was pruned; when nothing
    was, the list is exactly the full successor set.  Subclosures always
    survive the cap because their measure shrinks.
    """

    env, term = c
    pruned = False
    out: set[Closure] = set(fqu_children(env, term))

    base = sum(term_size(s) for _, s in env)
    tset, tpruned = _cpx_bounded(
        params.c, params.big_d, env, term, cap - base, params.budget
    )
    pruned |= tpruned
    for t2 in tset:
        if t2 != term:
            out.add(Closure(env, t2))

    room = cap - term_size(term)
    choices = []
    for i, (kind, side) in enumerate(env):
        # any single entry can use all the room the other entries leave
        ecap = room - (len(env) - 1)
        sset, spruned = _cpx_bounded(
            params.c, params.big_d, env[i + 1 :], side, ecap, params.budget
        )
        pruned |= spruned
        choices.append([(kind, s2) for s2 in sset])
    for picked in product(*choices):
        if sum(term_size(s2) for _, s2 in picked) > room:
            pruned = True
            continue
        e2 = tuple(picked)
        if not lleq_holds(0, term, env, e2):
            out.add(Closure(e2, term))
        if len(out) > params.budget:
            raise BudgetExceeded(f"more than {params.budget} successors")

    return sorted(out, key=_closure_sort_key), pruned


def fsb_certify(params: Params, env: Env, term: Term) -> BigTreeReport | Cycle:
    """Certify that no infinite chain of proper steps leaves ``(env, term)``.

    Explores every closure reachable by subclosure descent, proper term
    reduction and observed environment reduction; a finite acyclic graph
    certifies the property because branching is finite.  Staged like the
    term-level certifier: a bounded-depth cycle scan (its cycles are
    genuine), then the graph restricted to closures near the root's
    measure (exact when nothing is pruned), then the unrestricted graph.
    """

    got = _closure_scan(params, Closure(env, term))
    if got is not None:
        return got

    cap = closure_measure(Closure(env, term)) + CYCLE_SCAN_SLACK
    clean = True

    def bounded(c: Closure) -> list[Closure]:
        nonlocal clean
        succ, pruned = _bounded_successors(params, c, cap)
        if pruned:
            clean = False
        return succ

    got = explore(Closure(env, term), bounded, params.budget)
    if isinstance(got, Cycle):
        return got
    if clean:
        nodes, edges, depth = got
        return BigTreeReport(nodes, edges, depth)

    def successors(c: Closure) -> list[Closure]:
        return sorted(fpb_successors(params, *c), key=_closure_sort_key)

    got = explore(Closure(env, term), successors, params.budget)
    if isinstance(got, Cycle):
        return got
    nodes, edges, depth = got
    return BigTreeReport(nodes, edges, depth)


def _print_closure(c: Closure) -> str:
    return f"{print_env(c.env)} |- {print_term(c.term)}"


def fsb_graph(params: Params, env: Env, term: Term) -> str:
    """The reachable proper-step graph as a deterministic edge list.

    One ``src -> dst`` line per edge, sorted; works on cyclic graphs too,
    subject to the node budget.
    """

    root = Closure(env, term)
    seen = {root}
    frontier = [root]
    lines = []
    while frontier:
        fresh = []
        for c in frontier:
            for child in sorted(fpb_successors(params, *c), key=_closure_sort_key):
                lines.append(f"{_print_closure(c)} -> {_print_closure(child)}")
                if child not in seen:
                    seen.add(child)
                    if len(seen) > params.budget:
                        raise BudgetExceeded(
                            f"more than {params.budget} reachable closures"
                        )
                    fresh.append(child)
        frontier = fresh
    return "\n".join(sorted(lines))
