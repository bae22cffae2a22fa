"""Checking validity, reading failures, and watching it survive reduction.

A closure is valid when every application's argument type matches an
abstraction domain reachable through the function's iterated static
types, and every annotation matches its subject's type up to
normalization.  The checker reports the failing subterm's position and
rule when it rejects; the preservation report then confirms that a
valid closure stays valid, degree for degree and type for type, under
every one-step reduct of both the term and the environment.
"""

from lamcalc import (
    Params,
    cpr_reducts,
    parse_env,
    parse_term,
    preservation_report,
    print_term,
    snv_check,
)

P = Params()


def main() -> None:
    good = parse_term("(appl *0 (abst *1 #0))")
    env = parse_env("[]")
    wrapped = parse_term("(abst *1 (appl *0 (abst *1 #0)))")

    report = snv_check(P, env, wrapped)
    print(print_term(wrapped), "valid:", report.valid)

    bad = parse_term("(appl *1 (abst *0 #0))")
    report = snv_check(P, env, bad)
    print(print_term(bad), "valid:", report.valid)
    pos, rule, reason = report.failure
    print(f"    at {pos or '(root)'}: {rule} rule — {reason}")

    nested = parse_term("(abst *0 (appl *1 (abst *0 #0)))")
    report = snv_check(P, env, nested)
    pos, rule, reason = report.failure
    print(print_term(nested), "valid:", report.valid)
    print(f"    at {pos}: {rule} rule — {reason}")
    print()

    report = snv_check(P, env, good)
    print(print_term(good), "valid:", report.valid)
    preserved = preservation_report(P, env, good)
    print("    degree preserved under reduction:", preserved.degree_preserved)
    print("    validity preserved:              ", preserved.validity_preserved)
    print("    static types stay valid:         ", preserved.types_valid)
    print("    static types commute:            ", preserved.types_commute)
    for t2 in sorted(cpr_reducts(env, good, P.budget), key=print_term):
        verdict = snv_check(P, env, t2).valid
        print(f"    reduct {print_term(t2)}: valid = {verdict}")


if __name__ == "__main__":
    main()
