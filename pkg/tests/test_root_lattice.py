from __future__ import annotations

import json

import pytest
from hypothesis import given

from orthoschubert.index_sets import IndexSetError, IdElement, all_Id, make
from orthoschubert.root_lattice import (
    Monomial,
    RegionError,
    Root,
    build_regions,
    diagonal_part,
    down,
    element_of,
    greater,
    in_N,
    in_ON,
    on_diag,
    project_h,
    project_v,
    reflect,
    up,
)
from orthoschubert.domination import to_distinguished

from strategies import id_elements


def test_OR_count_d5():
    assert len(build_regions(make(5, (1, 3, 4, 6, 9))).or_v) == 10


def test_ON_region_d4():
    reg = build_regions(make(4, (1, 2, 5, 6)))
    assert set(reg.on_v) == {Root(3, 1), Root(4, 1), Root(7, 1), Root(3, 2), Root(4, 2)}


def test_diagonal_d4():
    reg = build_regions(make(4, (1, 2, 3, 4)))
    assert set(reg.diag) == {Root(8, 1), Root(7, 2), Root(6, 3), Root(5, 4)}


def test_build_regions_requires_Id():
    with pytest.raises(IndexSetError):
        build_regions(IdElement(2, (1, 3)))


def test_projections():
    assert project_v(Root(3, 1), 4) == Root(8, 1)
    assert project_h(Root(3, 1), 4) is None  # (3,6) is not in N_v
    assert project_v(Root(6, 1), 4) == Root(8, 1)
    assert project_h(Root(6, 1), 4) == Root(6, 3)
    a = Root(7, 2)
    assert project_v(a, 4) == a == project_h(a, 4)


def test_reflect():
    assert reflect(Root(3, 1), 4) == Root(8, 6)
    assert reflect(Root(7, 2), 4) == Root(7, 2)
    assert reflect(reflect(Root(5, 3), 4), 4) == Root(5, 3)


def test_up_of_distinguished_set():
    v = make(7, (1, 2, 3, 4, 7, 9, 10))
    w = make(7, (4, 6, 7, 10, 12, 13, 14))
    S = Monomial(to_distinguished(w, v))
    assert up(S, 7) == Monomial([Root(6, 3), Root(13, 2), Root(14, 1)])


def test_up_down_cover_symmetric_monomial():
    d = 4
    S = Monomial([Root(3, 1), Root(8, 6), Root(7, 2), Root(6, 3), Root(5, 1)])
    S = S + S.reflect(d)
    assert S.is_symmetric(d)
    assert up(S, d) + down(S, d) - diagonal_part(S, d) == S
    below = Monomial([Root(8, 6)])
    assert not up(below, d)


def test_monomial_basics():
    S = Monomial([Root(6, 1), Root(6, 1), Root(3, 2)])
    assert S.degree == 3 and len(S) == 2 and S.mult(Root(6, 1)) == 2
    assert S.text() == "{(3,2),(6,1)^2}"
    assert not S.is_square_free()
    assert S - Monomial([Root(6, 1)]) == Monomial([Root(6, 1), Root(3, 2)])
    with pytest.raises(ValueError):
        Monomial({Root(1, 1): -1})


def test_monomial_json_round_trip():
    S = Monomial([Root(6, 1), Root(6, 1), Root(3, 2)])
    data = S.to_json()
    assert data == [{"r": 3, "c": 2, "mult": 1}, {"r": 6, "c": 1, "mult": 2}]
    assert Monomial.from_json(json.loads(json.dumps(data))) == S


def test_check_region():
    reg = build_regions(make(4, (1, 2, 5, 6)))
    Monomial([Root(3, 1)]).check_region(reg.on_v)
    with pytest.raises(RegionError):
        Monomial([Root(8, 1)]).check_region(reg.on_v, "ON_v")


def test_element_of():
    v = make(4, (1, 2, 3, 4))
    assert element_of(v, [Root(8, 1), Root(6, 3)]) == make(4, (2, 4, 6, 8))
    with pytest.raises(RegionError):
        element_of(v, [Root(8, 1), Root(6, 1)])


@pytest.mark.parametrize("d", range(1, 7))
def test_region_invariants(d):
    for v in all_Id(d):
        reg = build_regions(v)
        assert len(reg.all_roots) == d * d
        assert set(reg.on_v) == set(reg.n_v) & set(reg.or_v)
        diag_n = set(reg.diag) & set(reg.n_v)
        upper_n = {a for a in reg.n_v if a.r <= 2 * d + 1 - a.c}
        assert diag_n | set(reg.on_v) == upper_n and not diag_n & set(reg.on_v)
        for a in reg.on_v:
            pv = project_v(a, d)
            assert pv in reg.diag and pv.c == a.c and pv.r > a.r
            ph = project_h(a, d)
            if a.r > 2 * d + 1 - a.r:
                assert ph in reg.diag
            else:
                assert ph is None
        below = {a for a in reg.n_v if a.r > 2 * d + 1 - a.c}
        assert {reflect(a, d) for a in reg.on_v} == below
        assert len(below) == len(reg.on_v)


@given(id_elements(1, 6))
def test_free_roots_lie_above_diagonal_outside_N(v):
    reg = build_regions(v)
    d = v.d
    for a in reg.free:
        assert not in_N(a) and not in_ON(a, d) and not on_diag(a, d)
    assert len(reg.free) + len(reg.on_v) == len(reg.or_v)


@given(id_elements(2, 6))
def test_chain_order_is_strict(v):
    on = build_regions(v).on_v
    for a in on:
        assert not greater(a, a)
        for b in on:
            assert not (greater(a, b) and greater(b, a))
