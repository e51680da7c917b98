from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoschubert.chains import iter_chains, w_of_chain
from orthoschubert.counting import hilbert_series_prefix, hilbert_value
from orthoschubert.domination import o_dominates
from orthoschubert.index_sets import all_Id, interval_Id, make
from orthoschubert.root_lattice import Monomial, build_regions
from orthoschubert.standard_monomials import (
    StandardMonomial,
    StandardMonomialError,
    count_sm,
    enumerate_sm,
    monomial_to_sm,
    sm_to_monomial,
    v_degree,
)
from orthoschubert.verify import suite_count_identity, suite_odd_mirror, suite_sm_bijection

from strategies import id_elements, monomials_on


def test_v_degree():
    v = make(4, (1, 2, 3, 4))
    assert v_degree(v, v) == 0
    assert v_degree(make(4, (2, 4, 6, 8)), v) == 1
    v7 = make(7, (1, 2, 3, 4, 7, 9, 10))
    assert v_degree(make(7, (4, 6, 7, 10, 12, 13, 14)), v7) == 2
    with pytest.raises(StandardMonomialError):
        v_degree(make(4, (1, 2, 3, 5)), v)


def test_standard_monomial_order_is_checked():
    v = make(4, (1, 2, 3, 4))
    a, b = make(4, (2, 4, 6, 8)), make(4, (1, 3, 5, 7))
    StandardMonomial((a, b), v)
    with pytest.raises(StandardMonomialError):
        StandardMonomial((b, a), v)


def test_sm_json():
    v = make(4, (1, 2, 3, 4))
    sm = StandardMonomial((make(4, (2, 4, 6, 8)),), v)
    assert sm.to_json() == {"thetas": [[2, 4, 6, 8]], "degree": 1}


def test_enumerate_trivial_degree():
    v = make(4, (1, 2, 5, 6))
    assert [sm.thetas for sm in enumerate_sm(v, make(4, (5, 6, 7, 8)), 0)] == [()]
    with pytest.raises(StandardMonomialError):
        enumerate_sm(make(4, (5, 6, 7, 8)), v, 1)


def test_empty_monomial():
    v = make(4, (1, 2, 5, 6))
    assert monomial_to_sm(Monomial(), v).thetas == ()
    assert sm_to_monomial(StandardMonomial((), v)) == Monomial()


def test_chain_goes_to_w_of_chain_first():
    v = make(5, (1, 2, 3, 4, 5))
    for C in iter_chains(build_regions(v).on_v):
        sm = monomial_to_sm(Monomial(C), v)
        assert sm.thetas[0] == w_of_chain(C, v)
        assert sm_to_monomial(sm) == Monomial(C)


def test_smooth_point_counts():
    for v in all_Id(4):
        H = hilbert_series_prefix(v, v, 4)
        assert [count_sm(v, v, m) for m in range(5)] == H


@pytest.mark.parametrize("d", [2, 3, 4])
def test_count_identity_sm_vs_hilbert(d):
    res = suite_count_identity(d, max_m=4)
    assert res.ok, res.failures[:3]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_bijection_random(d):
    res = suite_sm_bijection(d, samples=300, seed=d)
    assert res.ok, res.failures[:3]


@pytest.mark.parametrize("d", [1, 3])
def test_odd_mirror(d):
    res = suite_odd_mirror(d)
    assert res.ok, res.failures[:3]


def test_bijection_exhaustive_small():
    import itertools

    for v in all_Id(3):
        pool = build_regions(v).or_v
        seen = set()
        for m in range(4):
            for c in itertools.combinations_with_replacement(pool, m):
                S = Monomial(c)
                sm = monomial_to_sm(S, v)
                assert sm.degree == m and sm_to_monomial(sm) == S
                seen.add(sm.thetas)
        assert len(seen) == sum(
            len(list(itertools.combinations_with_replacement(pool, m))) for m in range(4)
        )


@settings(max_examples=150, deadline=None)
@given(id_elements(2, 5).filter(lambda v: bool(build_regions(v).or_v)).flatmap(
    lambda v: st.tuples(st.just(v), monomials_on(build_regions(v).or_v, 0, 6),
                        st.sampled_from(interval_Id(v)))))
def test_bijection_properties(vSw):
    v, S, w = vSw
    sm = monomial_to_sm(S, v)
    assert sm.is_v_compatible()
    assert sm.degree == S.degree
    assert sm_to_monomial(sm) == S
    assert o_dominates(w, S, v) == sm.is_dominated_by(w)


@settings(max_examples=40, deadline=None)
@given(id_elements(2, 4).flatmap(
    lambda v: st.tuples(st.just(v), st.sampled_from(interval_Id(v)), st.integers(0, 3))))
def test_enumeration_is_image_of_bijection(vwm):
    v, w, m = vwm
    for sm in enumerate_sm(v, w, m):
        S = sm_to_monomial(sm)
        assert S.degree == m and monomial_to_sm(S, v).thetas == sm.thetas
    assert count_sm(v, w, m) == hilbert_value(v, w, m)
