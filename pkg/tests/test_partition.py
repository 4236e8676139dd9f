from math import factorial

import pytest
from hypothesis import given, strategies as st

from glq.partition import (MalformedTableau, Partition, StandardTableau,
                           addable_columns, conjugate, enumerate_partitions,
                           enumerate_tableaux, h_stats, multiplicity,
                           partition_count, path_to_tableau, removable_columns,
                           remove_cell, tableau_to_path)

P = lambda *parts: Partition(tuple(parts))


def naive_partition_counts(n_max):
    # coefficients of prod_k 1/(1-x^k) by repeated convolution
    c = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for n in range(k, n_max + 1):
            c[n] += c[n - k]
    return c


def hook_count(lam):
    cols = lam.column_lengths()
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (cols[j] - i - 1) + 1
    return factorial(lam.size) // hooks


partitions_st = st.lists(st.integers(1, 7), max_size=7).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True))))


def test_conjugate_examples():
    assert conjugate(P(4, 3, 2)) == P(3, 3, 2, 1)
    assert conjugate(P()) == P()
    assert conjugate(P(2)) == P(1, 1)


def test_multiplicity_examples():
    assert multiplicity(P(4, 3, 2), 3) == 1
    assert multiplicity(P(1, 1), 1) == 2
    assert multiplicity(P(2), 1) == 0


def test_parse_and_format():
    assert Partition.parse("4,2,1") == P(4, 2, 1)
    assert Partition.parse("-") == P()
    assert str(P(4, 2, 1)) == "4,2,1"
    assert str(P()) == "-"
    assert Partition.parse(" 1,2 ") == P(2, 1)
    with pytest.raises(ValueError):
        Partition.parse("2,x")
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_addable_columns_examples():
    assert addable_columns(P()) == [1]
    assert addable_columns(P(4, 2, 1)) == [1, 2, 3, 5]
    assert addable_columns(P(1)) == [1, 2]


def test_enumerate_examples():
    assert set(enumerate_partitions(2)) == {P(), P(1), P(2), P(1, 1)}
    assert list(enumerate_partitions(4, num_parts=1)) == [P(1), P(2), P(3), P(4)]
    assert sum(1 for _ in enumerate_partitions(8, size=8)) == 22


def test_enumeration_matches_naive_counts():
    ref = naive_partition_counts(14)
    for n in range(15):
        got = list(enumerate_partitions(n, size=n))
        assert len(got) == len(set(got)) == ref[n] == partition_count(n)


def test_enumeration_constraints():
    for lam in enumerate_partitions(10, max_part=3):
        assert not lam.parts or lam.parts[0] <= 3
    assert sum(1 for _ in enumerate_partitions(10, max_part=3)) == \
        sum(1 for lam in enumerate_partitions(10) if not lam.parts or lam.parts[0] <= 3)
    for lam in enumerate_partitions(9, num_parts=2):
        assert len(lam) == 2


def test_conjugate_involution_exhaustive():
    for lam in enumerate_partitions(10):
        assert conjugate(conjugate(lam)) == lam


def test_multiplicity_identities_exhaustive():
    for lam in enumerate_partitions(10):
        assert sum(i * multiplicity(lam, i) for i in range(1, lam.size + 1)) == lam.size
        cols = lam.column_lengths()
        assert (cols[0] if cols else 0) == len(lam)


@given(partitions_st)
def test_add_then_remove_cell(lam):
    for s in addable_columns(lam):
        mu = lam.add_cell(s)
        assert mu.size == lam.size + 1
        assert s in removable_columns(mu)
        assert remove_cell(mu, s) == lam


@given(partitions_st)
def test_conjugate_column_lengths(lam):
    cols = lam.column_lengths()
    assert all(a >= b for a, b in zip(cols, cols[1:]))
    assert sum(cols) == lam.size


def test_tableau_to_path_example():
    T = StandardTableau(((1, 3, 4), (2,)))
    assert tableau_to_path(T) == (P(), P(1), P(1, 1), P(2, 1), P(3, 1))
    assert tableau_to_path(StandardTableau(((1,),))) == (P(), P(1))


def test_tableau_validation():
    for bad in [((1, 2), (2,)), ((2, 1),), ((1, 3), (2, 4), (5, 6, 7)), ((1, 2), (3, 4, 5))]:
        with pytest.raises(MalformedTableau):
            StandardTableau(bad)
    with pytest.raises(MalformedTableau):
        StandardTableau(((1, 4), (2,)))


def test_tableaux_roundtrip_and_count_exhaustive():
    for lam in enumerate_partitions(6):
        tabs = list(enumerate_tableaux(lam))
        assert len(tabs) == len(set(tabs)) == hook_count(lam)
        for T in tabs:
            assert T.shape == lam
            assert path_to_tableau(tableau_to_path(T)) == T


def test_h_stats_examples():
    T = StandardTableau(((1, 3, 5, 6), (2, 4, 7), (8, 9)))
    assert h_stats(T) == [0, 5, 1]
    assert h_stats(StandardTableau(((1,), (2,), (3,)))) == [0, 0, 0]
    assert h_stats(StandardTableau(((1, 2, 3, 4),))) == [3]
    assert h_stats(StandardTableau(())) == []


def test_h_stats_sum_exhaustive():
    for lam in enumerate_partitions(6):
        for T in enumerate_tableaux(lam):
            h = h_stats(T)
            assert len(h) == len(lam)
            assert all(x >= 0 for x in h)
            assert sum(h) == T.size - len(lam)
