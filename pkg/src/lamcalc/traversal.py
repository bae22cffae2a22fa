"""Exhaustive graph exploration with cycle detection.

Strong normalization of a finitely-branching relation is equivalent to the
reachable successor graph being finite and acyclic, so the certifiers below
walk that graph: a depth-first search keeps the current path (grey nodes)
to catch cycles, a budget caps the number of distinct nodes, and a second
pass over the finish order computes the longest path and the edge count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, TypeVar

from .errors import BudgetExceeded

__all__ = ["Cycle", "SnReport", "explore"]

Node = TypeVar("Node", bound=Hashable)


@dataclass(frozen=True)
class Cycle:
    """A reachable proper-step cycle (the listed nodes repeat forever)."""

    path: tuple


@dataclass(frozen=True)
class SnReport:
    """Witness of strong normalization: the reachable graph is a finite DAG
    of ``nodes`` nodes whose longest path has ``max_depth`` steps."""

    nodes: int
    max_depth: int


def explore(
    root: Node,
    successors: Callable[[Node], Iterable[Node]],
    budget: int,
) -> Cycle | tuple[int, int, int]:
    """Walk the graph from ``root``; return a Cycle or (nodes, edges, depth)."""

    succ_of: dict[Node, tuple[Node, ...]] = {}

    def succs(n: Node) -> tuple[Node, ...]:
        out = succ_of.get(n)
        if out is None:
            out = tuple(successors(n))
            succ_of[n] = out
        return out

    GREY, BLACK = 0, 1
    color: dict[Node, int] = {root: GREY}
    if budget < 1:
        raise BudgetExceeded("traversal budget is zero")
    stack = [(root, iter(succs(root)))]
    path = [root]
    finish: list[Node] = []
    while stack:
        node, pending = stack[-1]
        advanced = False
        for child in pending:
            mark = color.get(child)
            if mark is None:
                color[child] = GREY
                if len(color) > budget:
                    raise BudgetExceeded(f"more than {budget} reachable nodes")
                stack.append((child, iter(succs(child))))
                path.append(child)
                advanced = True
                break
            if mark == GREY:
                return Cycle(tuple(path[path.index(child) :]))
        if not advanced:
            stack.pop()
            path.pop()
            color[node] = BLACK
            finish.append(node)
    depth: dict[Node, int] = {}
    edges = 0
    for n in finish:
        out = succ_of[n]
        edges += len(out)
        depth[n] = 1 + max(depth[s] for s in out) if out else 0
    return len(finish), edges, depth[root]
