from __future__ import annotations

from fractions import Fraction

import pytest

from oracle import cartan as oracle_cartan
from oracle import d_values as oracle_d
from weylq.rootdata import (
    LieType,
    RootDataError,
    build_root_datum,
    coxeter_order,
    dump,
    neighbors,
    root_datum,
)

ALL_TYPES = (
    [("A", l) for l in range(1, 7)]
    + [("B", l) for l in range(2, 6)]
    + [("C", l) for l in range(2, 6)]
    + [("D", l) for l in range(4, 7)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_cartan_matches_gram_oracle(family, rank):
    datum = root_datum(family, rank)
    assert [list(row) for row in datum.cartan] == oracle_cartan(family, rank)
    assert [datum.d_i(i) for i in datum.nodes] == oracle_d(family, rank)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_structural_invariants(family, rank):
    datum = root_datum(family, rank)
    n = datum.rank
    for i in datum.nodes:
        assert datum.C(i, i) == 2
        for j in datum.nodes:
            if i != j:
                assert datum.C(i, j) <= 0
                assert (datum.C(i, j) == 0) == (datum.C(j, i) == 0)
            assert datum.d_i(i) * datum.C(i, j) == datum.d_i(j) * datum.C(j, i)
    assert set(datum.d_units) <= {1, datum.c}
    assert min(datum.d_units) == 1 and max(datum.d_units) == datum.c
    assert datum.d == min(datum.d_i(i) for i in datum.nodes)
    assert datum.d_prime == max(datum.d_i(i) for i in datum.nodes)
    assert len(datum.cartan) == n


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_coxeter_symmetric_and_tabulated(family, rank):
    datum = root_datum(family, rank)
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    for i in datum.nodes:
        assert coxeter_order(datum, i, i) == 1
        for j in datum.nodes:
            assert coxeter_order(datum, i, j) == coxeter_order(datum, j, i)
            if i != j:
                assert coxeter_order(datum, i, j) == table[datum.C(i, j) * datum.C(j, i)]


def test_c_by_family():
    expected = {"A": 1, "D": 1, "E": 1, "B": 2, "C": 2, "F": 2, "G": 3}
    for family, rank in ALL_TYPES:
        assert root_datum(family, rank).c == expected[family]


def test_symmetrizer_table():
    table = {
        "A": (1, 1),
        "D": (1, 1),
        "E": (1, 1),
        "B": (Fraction(1, 2), 1),
        "C": (1, 2),
        "F": (Fraction(1, 2), 1),
        "G": (1, 3),
    }
    for family, rank in ALL_TYPES:
        datum = root_datum(family, rank)
        assert (datum.d, datum.d_prime) == table[family]


def test_b2_values():
    datum = root_datum("B", 2)
    assert [datum.d_i(i) for i in datum.nodes] == [1, Fraction(1, 2)]
    assert (datum.d, datum.d_prime, datum.c) == (Fraction(1, 2), 1, 2)
    assert datum.d_units == (2, 1)


def test_g2_values():
    datum = root_datum("G", 2)
    assert [datum.d_i(i) for i in datum.nodes] == [1, 3]
    assert (datum.d, datum.d_prime, datum.c) == (1, 3, 3)
    assert datum.d_units == (1, 3)
    assert coxeter_order(datum, 1, 2) == 6


def test_a3_tridiagonal():
    datum = root_datum("A", 3)
    assert datum.cartan == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert all(datum.d_i(i) == 1 for i in datum.nodes)
    assert coxeter_order(root_datum("A", 2), 1, 2) == 3


def test_labeling_conventions():
    # B: last node short; C: last node long; G2: node 2 long; F4: nodes 3, 4 short
    assert root_datum("B", 3).d_units == (2, 2, 1)
    assert root_datum("C", 3).d_units == (1, 1, 2)
    assert root_datum("F", 4).d_units == (2, 2, 1, 1)
    e7 = root_datum("E", 7)
    assert neighbors(e7, 3) == ([2], [4, 5])
    assert neighbors(e7, 4) == ([3], [])
    assert neighbors(e7, 5) == ([3], [6])


def test_neighbors():
    assert neighbors(root_datum("A", 3), 2) == ([1], [3])
    assert neighbors(root_datum("D", 4), 2) == ([1], [3, 4])
    assert neighbors(root_datum("A", 1), 1) == ([], [])


@pytest.mark.parametrize(
    "family,rank",
    [("A", 0), ("B", 1), ("C", 1), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 3)],
)
def test_invalid_rank_rejected(family, rank):
    with pytest.raises(RootDataError) as info:
        LieType(family, rank)
    assert family in str(info.value)


def test_rank_message_names_constraint():
    with pytest.raises(RootDataError, match=r"rank in \{6, 7, 8\}"):
        root_datum("E", 5)


def test_node_out_of_range():
    datum = root_datum("A", 2)
    with pytest.raises(RootDataError):
        coxeter_order(datum, 1, 3)
    with pytest.raises(RootDataError):
        neighbors(datum, 0)


def test_build_is_cached_and_immutable():
    a = build_root_datum(LieType("B", 3))
    assert a is build_root_datum(LieType("B", 3))
    with pytest.raises(AttributeError):
        a.c = 5  # type: ignore[misc]


def test_dump_lists_tables():
    text = dump(root_datum("B", 2))
    assert "type B2" in text
    assert "d = 1/2, d' = 1, c = 2" in text
    assert "e_i = d_i/d: 2, 1" in text
