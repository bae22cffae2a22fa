"""Release gate: eleven criteria over the bounded universe of closures.

The universe is every closure with terms of at most 4 constructors,
environments of at most 2 entries, and sorts 0..1, checked with the
default parameters (sort step 1, top degree 2).  Each criterion prints
one ``[PASS]``/``[FAIL]`` line (visible with ``pytest -s`` or on
failure) and asserts zero counterexamples; timed criteria also enforce
their wall-clock limits.
"""

from __future__ import annotations

import time

from lamcalc import (
    Cycle,
    Params,
    cpr_reducts,
    fsb_certify,
    parse_term,
    print_env,
    print_term,
    snv_check,
    snv_oracle,
)
from lamcalc.props import run_suite
from lamcalc.universe import enumerate_closures

P = Params()
SIZE, ENVLEN, MAXSORT = 4, 2, 1

DELTA = parse_term("(abst *0 (appl #0 #0))")
OMEGA = parse_term("(appl (abst *0 (appl #0 #0)) (abst *0 (appl #0 #0)))")
REDUCTUM = parse_term("(abbr (cast *0 (abst *0 (appl #0 #0))) (appl #0 #0))")
OMEGA_K = parse_term(
    "(appl (abst *0 (appl *1 (appl #0 #0)))"
    " (abst *0 (appl *1 (appl #0 #0))))"
)


def _verdict(
    num: int,
    label: str,
    failures: list[str],
    elapsed: float | None = None,
    limit: float | None = None,
) -> None:
    if elapsed is not None and limit is not None and elapsed > limit:
        failures = failures + [
            f"took {elapsed:.1f}s, limit {limit:.0f}s"
        ]
    status = "PASS" if not failures else "FAIL"
    note = f"  [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"[{status}] criterion {num:2d}: {label}{note}")
    for line in failures[:10]:
        print(f"         {line}")
    assert not failures, f"criterion {num} ({label}): {failures[:10]}"


def _sweep(num: int, label: str, suite: str, limit: float | None) -> None:
    start = time.perf_counter()
    failures = run_suite(suite, P, SIZE, ENVLEN, MAXSORT)
    _verdict(num, label, failures, time.perf_counter() - start, limit)


def test_criterion_01_self_application_loops_in_one_step():
    start = time.perf_counter()
    failures = []
    if REDUCTUM not in cpr_reducts((), OMEGA, P.budget):
        failures.append("contraction is not a one-step reduct")
    if OMEGA not in cpr_reducts((), REDUCTUM, P.budget):
        failures.append("self-application does not return in one step")
    _verdict(
        1,
        "self-application and its contraction are one parallel step apart",
        failures,
        time.perf_counter() - start,
        1.0,
    )


def test_criterion_02_closure_level_loop_is_detected():
    start = time.perf_counter()
    got = fsb_certify(P, (), OMEGA_K)
    failures = [] if isinstance(got, Cycle) else [f"no cycle: {got}"]
    _verdict(
        2,
        "guarded self-application yields a closure-level cycle",
        failures,
        time.perf_counter() - start,
        1.0,
    )


def test_criterion_03_diamond():
    _sweep(3, "one-step reducts pairwise rejoin", "diamond", 300.0)


def test_criterion_04_church_rosser():
    _sweep(
        4,
        "two-step reducts rejoin within two further steps",
        "church-rosser",
        600.0,
    )


def test_criterion_05_arity_preservation():
    _sweep(
        5,
        "extended reduction preserves atomic arity",
        "arity-preservation",
        None,
    )


def test_criterion_06_sn_extended():
    _sweep(
        6,
        "arity-typed terms strongly normalize under extended reduction",
        "sn-extended",
        None,
    )


def test_criterion_07_very_big_tree():
    _sweep(
        7,
        "arity-typed closures strongly normalize at the closure level",
        "very-big-tree",
        900.0,
    )


def test_criterion_08_subject_reduction():
    _sweep(
        8,
        "validity survives reduction and the preservation report",
        "subject-reduction",
        None,
    )


def test_criterion_09_statics_laws():
    _sweep(
        9,
        "static types move strictly and track degrees",
        "statics-laws",
        None,
    )


def test_criterion_10_lleq_laws():
    _sweep(
        10,
        "lazy equivalence laws and pointwise-union totality",
        "lleq-laws",
        None,
    )


def test_criterion_11_checker_oracle_agreement():
    start = time.perf_counter()
    failures = []
    for env, term in enumerate_closures(SIZE, ENVLEN, MAXSORT):
        got = snv_check(P, env, term).valid
        want = snv_oracle(P, env, term, 4)
        if got != want:
            failures.append(
                f"release blocker — {print_env(env)} |- "
                f"{print_term(term)}: checker says {got}, "
                f"derivation search says {want}"
            )
    _verdict(
        11,
        "validity checker agrees with the derivation-search oracle",
        failures,
        time.perf_counter() - start,
        None,
    )
