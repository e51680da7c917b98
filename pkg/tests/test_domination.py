from __future__ import annotations

import pytest
from hypothesis import given, settings

from orthoschubert.chains import iter_chains, w_of_chain
from orthoschubert.counting import iter_path_tuples
from orthoschubert.domination import (
    DominationError,
    condition_A,
    condition_B,
    dominates,
    dominates_oracle,
    from_distinguished,
    is_distinguished,
    least_o_dominating,
    least_o_dominating_oracle,
    o_dominates,
    o_dominates_chain,
    o_dominates_oracle,
    slice_element,
    slices,
    to_distinguished,
)
from orthoschubert.index_sets import IndexSetError, IdElement, interval_Id, make, validate
from orthoschubert.root_lattice import Monomial, Root, build_regions, up
from orthoschubert.verify import suite_distinguished, suite_domination_decomposition

from strategies import board_monomials, pairs

BIG_V = (1, 2, 3, 4, 5, 11, 12, 13, 14, 19, 20, 22, 23, 26, 29, 30, 31, 32, 37, 38, 39, 40, 41)
BIG_W = (4, 5, 9, 10, 14, 17, 18, 21, 23, 25, 27, 28, 31, 32, 34, 35, 36, 39, 40, 41, 44, 45, 46)
BIG_SW = "{(9,3), (10,2), (17,13), (18,12), (21,20), (25,22), (27,26), (28,19), (34,30), (35,29), (36,11), (44,38), (45,37), (46,1)}"
BIG_UP = "{(9,3), (10,2), (17,13), (18,12), (21,20), (25,22), (28,19), (36,11), (46,1)}"

SMALL_V = make(7, (1, 2, 3, 4, 7, 9, 10))
SMALL_W = make(7, (4, 6, 7, 10, 12, 13, 14))


def fmt(roots) -> str:
    return "{" + ", ".join(str(a) for a in sorted(roots, key=lambda a: (a.r, a.c))) + "}"


def test_distinguished_d23():
    v = validate(23, BIG_V, require_Id=True)
    w = validate(23, BIG_W, require_Id=True)
    Sw = to_distinguished(w, v)
    assert fmt(Sw) == BIG_SW
    assert fmt(up(Monomial(Sw), 23).support) == BIG_UP


def test_distinguished_d7():
    Sw = to_distinguished(SMALL_W, SMALL_V)
    assert fmt(Sw) == "{(6,3), (12,9), (13,2), (14,1)}"
    assert fmt(up(Monomial(Sw), 7).support) == "{(6,3), (13,2), (14,1)}"


def test_distinguished_d10():
    v = validate(10, (1, 2, 3, 4, 6, 8, 11, 12, 14, 16), require_Id=True)
    w = validate(10, (8, 9, 11, 14, 15, 16, 17, 18, 19, 20), require_Id=True)
    Sw = to_distinguished(w, v)
    assert set(Sw) == {Root(20, 1), Root(19, 2), Root(18, 3), Root(17, 4), Root(9, 6), Root(15, 12)}


def test_distinguished_trivial_and_errors():
    assert to_distinguished(SMALL_V, SMALL_V) == ()
    with pytest.raises(DominationError):
        to_distinguished(SMALL_V, SMALL_W)


def test_conditions():
    assert condition_A(Root(6, 3), Root(13, 2))
    assert not condition_A(Root(6, 3), Root(6, 2))
    assert condition_B(Root(13, 2), Root(6, 3))  # 6 > 2 but 2 < 3
    assert not is_distinguished([Root(6, 1), Root(8, 3)])


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_distinguished_exhaustive(d):
    res = suite_distinguished(d)
    assert res.ok, res.failures[:3]


def test_dominates_examples():
    v = SMALL_V
    Sw = Monomial(to_distinguished(SMALL_W, v))
    assert dominates(SMALL_W, Sw, v)
    assert dominates(SMALL_W, Monomial(), v)
    assert not dominates(v, Sw, v)


def test_o_dominates_examples():
    v = SMALL_V
    on = build_regions(v).on_v
    assert o_dominates(SMALL_W, Monomial(), v)
    assert not o_dominates(v, Monomial([on[0]]), v)
    with pytest.raises(IndexSetError):
        o_dominates(IdElement(2, (1, 3)), Monomial(), make(2, (1, 2)))


def test_singletons_versus_path_tuples_d7():
    v, w = SMALL_V, SMALL_W
    on = build_regions(v).on_v
    covered = {a for t in iter_path_tuples(v, w) for p in t for a in p}
    for a in on:
        assert o_dominates(w, Monomial([a]), v) == (a in covered)
    assert len(on) == 18


def test_o_dominates_chain_matches_w_of_chain():
    v = make(4, (1, 2, 3, 4))
    C = (Root(6, 1),)
    assert o_dominates_chain(make(4, (2, 4, 6, 8)), C, v)
    assert not o_dominates_chain(make(4, (1, 3, 5, 7)), C, v)


def test_slices_examples():
    s = slices(SMALL_V, SMALL_V)
    assert all(x == SMALL_V for part in s.values() for x in part.values())
    v = make(4, (1, 2, 5, 6))
    x = make(4, (1, 3, 5, 7))  # S_x = {(3,2),(7,6)} is an antichain
    assert to_distinguished(x, v) == (Root(3, 2), Root(7, 6))
    assert slice_element(x, v, 1, 1) == x
    assert slice_element(x, v, 2) == v
    s = slices(SMALL_W, SMALL_V)
    for k, y in s["sub"].items():
        Sy = to_distinguished(y, SMALL_V)
        assert from_distinguished(Sy, SMALL_V) == y


def test_slices_of_Id_elements_stay_in_Id():
    for w in interval_Id(SMALL_V):
        s = slices(w, SMALL_V)
        assert all(x.in_Id for x in s["pair"].values())
        assert all(x.in_Id for j, x in s["sup"].items() if j % 2 == 1)


def test_least_o_dominating_examples():
    v = SMALL_V
    assert least_o_dominating(Monomial(), v) == v
    for C in list(iter_chains(build_regions(v).on_v))[:200]:
        assert least_o_dominating(Monomial(C), v) == w_of_chain(C, v)


@pytest.mark.parametrize("d", [3, 4])
def test_decomposition_exhaustive(d):
    res = suite_domination_decomposition(d)
    assert res.ok, res.failures[:3]


@pytest.mark.parametrize("d", [5, 6])
def test_decomposition_random(d):
    res = suite_domination_decomposition(d, samples=25, seed=d)
    assert res.ok, res.failures[:3]


@settings(max_examples=100, deadline=None)
@given(board_monomials(2, 5, max_size=6))
def test_least_o_dominating_matches_scan(vS):
    v, S = vS
    assert least_o_dominating(S, v) == least_o_dominating_oracle(S, v)


@settings(max_examples=100, deadline=None)
@given(pairs(2, 5), board_monomials(2, 5, max_size=5))
def test_o_dominates_matches_oracle(vw, vS):
    v, S = vS
    for w in interval_Id(v):
        assert o_dominates(w, S, v) == o_dominates_oracle(w, S, v)
        assert dominates(w, S, v) == dominates_oracle(w, S, v)
