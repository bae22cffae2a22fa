from __future__ import annotations

import pytest
from hypothesis import given

from genterms import envs, terms
from lamcalc import (
    Bind,
    BindKind,
    Closure,
    FlatKind,
    ParseError,
    Sort,
    Var,
    abst,
    appl,
    applv,
    append,
    length,
    parse_env,
    parse_term,
    print_env,
    print_term,
    simple,
    term_size,
    tsts,
)
from lamcalc.universe import closure_key, enumerate_closures, enumerate_terms


# --------------------------------------------------------------- structure


def test_length():
    assert length(()) == 0
    assert length(parse_env("[dec *0]")) == 1
    assert length(parse_env("[dec *0; def #0]")) == 2


def test_append():
    k = parse_env("[dec *0]")
    l = parse_env("[def *1]")
    assert append(k, ()) == k
    assert append((), l) == l
    assert print_env(append(k, l)) == "[dec *0; def *1]"


def test_env_entry_order():
    env = parse_env("[dec *0; def #0]")
    # entry 0 is the innermost, i.e. the rightmost one in the text
    assert env[0] == (BindKind.ABBR, Var(0))
    assert env[1] == (BindKind.ABST, Sort(0))


def test_applv():
    assert applv((), Var(0)) == Var(0)
    assert applv((Sort(0),), Var(0)) == parse_term("(appl *0 #0)")
    assert applv((Sort(0), Sort(1)), Var(0)) == parse_term("(appl *0 (appl *1 #0))")


def test_simple():
    assert simple(Sort(0))
    assert not simple(parse_term("(abst *0 #0)"))
    assert simple(parse_term("(appl *0 #0)"))


def test_tsts_examples():
    assert tsts(Sort(0), Sort(0))
    assert not tsts(Sort(0), Sort(1))
    assert tsts(parse_term("(appl *0 #0)"), parse_term("(appl *1 *1)"))
    assert not tsts(parse_term("(appl *0 #0)"), parse_term("(cast *0 #0)"))
    assert not tsts(parse_term("(abbr *0 #0)"), parse_term("(abst *0 #0)"))
    assert not tsts(Sort(0), Var(0))


def test_tsts_laws():
    pool = enumerate_terms(3, 1, 2)
    for t1 in pool:
        assert tsts(t1, t1)
        for t2 in pool:
            assert tsts(t1, t2) == tsts(t2, t1)


# ------------------------------------------------------------ text syntax


def test_parse_term_examples():
    assert parse_term("*3") == Sort(3)
    assert parse_term("(abst *0 #0)") == Bind(BindKind.ABST, Sort(0), Var(0))
    with pytest.raises(ParseError):
        parse_term("(appl")


def test_parse_error_offset():
    try:
        parse_term("(appl *0")
    except ParseError as e:
        assert e.offset == 8
    else:
        pytest.fail("no error raised")
    try:
        parse_term("(appl *0 #0) junk")
    except ParseError as e:
        assert e.offset == 13


def test_parse_rejects_garbage():
    for bad in ["", "squid", "(frob *0 #0)", "[abbr *0]", "*", "#", "(appl *0 #0))"]:
        with pytest.raises(ParseError):
            parse_term(bad)
    for bad in ["", "[", "[dec]", "[dec *0;]", "[abbr *0]", "[dec *0] x"]:
        with pytest.raises(ParseError):
            parse_env(bad)


@given(terms())
def test_parse_print_roundtrip(t):
    assert parse_term(print_term(t)) == t


@given(envs())
def test_parse_print_env_roundtrip(env):
    assert parse_env(print_env(env)) == env


def test_print_canonical_whitespace():
    noisy = "  ( appl  *0\n\t#1 )  "
    assert print_term(parse_term(noisy)) == "(appl *0 #1)"
    assert print_env(parse_env(" [ dec  *0 ;  def #0 ] ")) == "[dec *0; def #0]"


def test_flat_kinds_appl_vs_cast():
    assert parse_term("(appl *0 #0)").kind == FlatKind.APPL
    assert parse_term("(cast *0 #0)").kind == FlatKind.CAST
    assert print_term(abst(Sort(0), appl(Var(0), Var(0)))) == "(abst *0 (appl #0 #0))"


# ------------------------------------------------------------- enumeration
#
# Counting oracle, independent of the enumerator: builds concrete term
# strings straight from the grammar and counts them.


def _oracle_term_strings(size: int, max_sort: int, max_ref: int) -> list[str]:
    if size < 1:
        return []
    if size == 1:
        return [f"*{k}" for k in range(max_sort + 1)] + [f"#{i}" for i in range(max_ref)]
    out = []
    for left in range(1, size - 1):
        for a in _oracle_term_strings(left, max_sort, max_ref):
            for b in _oracle_term_strings(size - 1 - left, max_sort, max_ref):
                for op in ("abbr", "abst", "appl", "cast"):
                    out.append(f"({op} {a} {b})")
    return out


def _oracle_count(max_term_size: int, max_env_len: int, max_sort: int) -> int:
    max_ref = max_env_len + max_term_size
    n_terms = sum(
        len(_oracle_term_strings(s, max_sort, max_ref)) for s in range(1, max_term_size + 1)
    )
    n_entries = 2 * len(_oracle_term_strings(1, max_sort, max_ref))  # size 2 is impossible
    n_envs = sum(n_entries**k for k in range(max_env_len + 1))
    return n_terms * n_envs


def test_enumerate_smallest():
    assert list(enumerate_closures(1, 0, 0)) == [Closure((), Sort(0)), Closure((), Var(0))]
    assert list(enumerate_closures(0, 0, 0)) == []


def test_enumerate_count_against_oracle():
    count = len(list(enumerate_closures(3, 0, 1)))
    assert count == _oracle_count(3, 0, 1) == 105


def test_enumerate_acceptance_universe_count():
    count = len(list(enumerate_closures(4, 2, 1)))
    assert count == _oracle_count(4, 2, 1) == 72072


def test_enumerate_ordered_and_within_bounds():
    seen = list(enumerate_closures(3, 1, 1))
    keys = [closure_key(c) for c in seen]
    assert keys == sorted(keys)
    assert len(keys) == len(set(keys))
    for env, t in seen:
        assert term_size(t) <= 3
        assert len(env) <= 1
        for _, w in env:
            assert term_size(w) <= 2

    def atoms_ok(t) -> bool:
        match t:
            case Sort(k):
                return k <= 1
            case Var(i):
                return i < 1 + 3
            case _:
                return atoms_ok(t.side) and atoms_ok(t.body)

    assert all(atoms_ok(t) and all(atoms_ok(w) for _, w in env) for env, t in seen)
