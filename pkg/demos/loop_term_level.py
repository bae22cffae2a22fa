"""The classic self-application loop, at the term level.

Omega applies a self-applying abstraction to itself.  One parallel step
contracts the outer redex into a definition; one more parallel step
(unfold the definition, erase the annotation, drop the spent binder)
recreates omega exactly.  The strong-normalization certifier refuses to
certify it and exhibits the loop.
"""

from lamcalc import Cycle, Params, cpr_reducts, csx_certify, parse_term, print_term

P = Params()

OMEGA = parse_term("(appl (abst *0 (appl #0 #0)) (abst *0 (appl #0 #0)))")
CONTRACTION = parse_term("(abbr (cast *0 (abst *0 (appl #0 #0))) (appl #0 #0))")


def main() -> None:
    print("omega           ", print_term(OMEGA))
    print("its contraction ", print_term(CONTRACTION))
    print()

    forward = cpr_reducts((), OMEGA, P.budget)
    back = cpr_reducts((), CONTRACTION, P.budget)
    print("contraction reachable in one step:", CONTRACTION in forward)
    print("omega recovered in one step:      ", OMEGA in back)
    print()

    got = csx_certify(P, (), OMEGA)
    assert isinstance(got, Cycle)
    print("certifier verdict: cycle of length", len(got.path))
    for term in got.path:
        print("   ", print_term(term))


if __name__ == "__main__":
    main()
