"""Hypothesis strategies for random terms and environments."""

from __future__ import annotations

import hypothesis.strategies as st

from lamcalc import Bind, BindKind, Flat, FlatKind, Sort, Var


def terms(max_sort: int = 3, max_ref: int = 5) -> st.SearchStrategy:
    atoms = st.one_of(
        st.integers(0, max_sort).map(Sort),
        st.integers(0, max_ref).map(Var),
    )

    def compound(sub: st.SearchStrategy) -> st.SearchStrategy:
        return st.one_of(
            st.builds(Bind, st.sampled_from(list(BindKind)), sub, sub),
            st.builds(Flat, st.sampled_from(list(FlatKind)), sub, sub),
        )

    return st.recursive(atoms, compound, max_leaves=10)


def envs(max_len: int = 3, max_sort: int = 3, max_ref: int = 5) -> st.SearchStrategy:
    entry = st.tuples(st.sampled_from(list(BindKind)), terms(max_sort, max_ref))
    return st.lists(entry, max_size=max_len).map(tuple)
