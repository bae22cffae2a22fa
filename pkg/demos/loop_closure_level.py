"""A loop that only exists at the closure level.

Guarding the self-application with an extra application (appl *1 ...)
makes the term grow forever instead of returning to itself: the
term-level reduction graph of this variant is an infinite tree with no
cycle.  The closure-level relation also allows stepping INTO a
subclosure, and there the loop closes: reducing the redex pushes the
abstraction into the environment, and the application body inside that
environment is a subclosure equal to one seen before.

The big-tree certifier finds that cycle.  On a strongly normalizing
closure it instead reports the finite graph, which fsb_graph exports
edge by edge.
"""

from lamcalc import (
    BigTreeReport,
    Cycle,
    Params,
    fsb_certify,
    fsb_graph,
    parse_term,
    print_env,
    print_term,
)

P = Params()

OMEGA_K = parse_term(
    "(appl (abst *0 (appl *1 (appl #0 #0)))"
    " (abst *0 (appl *1 (appl #0 #0))))"
)


def main() -> None:
    print("guarded omega:", print_term(OMEGA_K))
    print()

    got = fsb_certify(P, (), OMEGA_K)
    assert isinstance(got, Cycle)
    print("certifier verdict: closure-level cycle of length", len(got.path))
    for env, term in got.path:
        print(f"    {print_env(env)} |- {print_term(term)}")
    print()

    tame = parse_term("(abst *1 #0)")
    report = fsb_certify(P, (), tame)
    assert isinstance(report, BigTreeReport)
    print(
        f"by contrast {print_term(tame)}: "
        f"{report.nodes} closures, {report.edges} edges, "
        f"depth {report.max_depth}"
    )
    print()
    print("its full closure graph:")
    for line in fsb_graph(P, (), parse_term("(cast *0 *1)")).splitlines():
        print("   ", line)


if __name__ == "__main__":
    main()
