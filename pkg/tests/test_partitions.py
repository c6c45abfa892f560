from fractions import Fraction
from math import comb

import pytest

from qchroma.errors import SizeLimitError
from qchroma.linalg import RationalMatrix, rank_and_nullspace
from qchroma.partitions import (
    find_dependency,
    geometric_product,
    geometric_product_via_factors,
    monomial_matrix,
    monomial_rank,
    partition_count,
    partitions,
    qpoch,
    row_factors,
    threshold_scan,
    verify_dependency,
)
from qchroma.polynomials import UniPoly


def test_partition_stream_order_n4():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partition_stream_small():
    assert list(partitions(1)) == [(1,)]
    assert len(list(partitions(5))) == 7
    assert list(partitions(0)) == [()]


def test_partition_count_matches_stream():
    for n in range(0, 26):
        assert partition_count(n) == len(list(partitions(n)))


def test_partition_count_landmarks():
    assert partition_count(0) == 1
    assert partition_count(5) == 7
    assert partition_count(39) == 31185


def test_geometric_product_examples():
    assert geometric_product((2,), 1) == UniPoly("q", {2: 1, 0: 1})
    assert geometric_product((1, 1), 2) == UniPoly("q", {4: 1, 3: 2, 2: 3, 1: 2, 0: 1})
    assert geometric_product((5, 3, 2), 0) == UniPoly.constant("q", 1)


def test_qpoch_examples():
    assert qpoch(1) == UniPoly("q", {1: 1, 0: -1})
    assert qpoch(2) == UniPoly("q", {3: 1, 2: -1, 1: -1, 0: 1})
    assert qpoch(5).degree == 15


def test_row_factors_for_partitions_of_two():
    two = row_factors((2,))
    assert two.q_factor == UniPoly("q", {1: 1, 0: -1})        # q - 1
    assert two.z_factor == UniPoly("z", {2: 1, 0: -1})        # z^2 - 1
    ones = row_factors((1, 1))
    assert ones.q_factor == UniPoly("q", {1: 1, 0: 1})        # q + 1
    assert ones.z_factor == UniPoly("z", {2: 1, 1: -2, 0: 1})  # (z-1)^2


def test_row_factor_degrees():
    for n in range(1, 13):
        for tau in partitions(n):
            factors = row_factors(tau)
            assert factors.q_factor.degree == comb(n, 2)
            assert factors.z_factor.degree == n


def test_row_factor_reconstruction():
    for n in range(1, 9):
        for tau in partitions(n):
            denom = UniPoly.constant("q", 1)
            for part in tau:
                denom = denom * UniPoly("q", {part: 1, 0: -1})
            assert row_factors(tau).q_factor * denom == qpoch(n)


def test_rejects_non_partitions():
    with pytest.raises(ValueError):
        row_factors((1, 2))
    with pytest.raises(ValueError):
        row_factors((2, 0))


def test_two_routes_to_the_row_polynomials():
    for n in range(1, 9):
        for tau in partitions(n):
            for y in range(6):
                assert geometric_product(tau, y) == geometric_product_via_factors(tau, y)


def test_monomial_matrix_shapes():
    m2 = monomial_matrix(2)
    assert (m2.nrows, m2.ncols) == (2, 6)
    m1 = monomial_matrix(1)
    assert (m1.nrows, m1.ncols) == (1, 2)
    assert list(m1.rows[0]) == [-1, 1]        # z - 1
    m4 = monomial_matrix(4)
    assert (m4.nrows, m4.ncols) == (5, (1 + comb(4, 2)) * (1 + 4))
    assert m4.ncols == 35


def test_monomial_rank_full_up_to_six():
    for n in range(1, 7):
        expected = partition_count(n)
        assert monomial_rank(n, "exact") == expected
        assert monomial_rank(n, "modular") == expected


def test_rank_bounded_by_dimension():
    for n in range(1, 7):
        assert monomial_rank(n) <= (1 + comb(n, 2)) * (1 + n)


def test_monomial_matrix_cap():
    with pytest.raises(SizeLimitError):
        monomial_matrix(17)


def test_threshold_scan_crossover():
    rows = threshold_scan(60)
    exceed = [row.n for row in rows if row.exceeds]
    assert exceed == list(range(39, 61))
    row39 = rows[38]
    assert (row39.partition_count, row39.bound) == (31185, 29680)
    assert rows[37].exceeds is False
    assert rows[0].to_json() == {"n": 1, "partitions": 1, "bound": 2, "exceeds": False}


def test_find_dependency_none_when_independent():
    assert find_dependency(2, mode="exact") is None
    assert find_dependency(4, mode="modular-then-lift") is None


def test_find_dependency_engineered_duplicate():
    dep = find_dependency(2, taus=[(1, 1), (2,), (1, 1)], mode="exact")
    assert dep is not None
    taus = [t for t, _ in dep]
    alphas = [a for _, a in dep]
    assert taus == [(1, 1), (1, 1)]
    assert alphas[0] == -alphas[1] != 0


def test_find_dependency_modular_lift_and_verify():
    dep = find_dependency(3, taus=[(2, 1), (3,), (2, 1)], mode="modular-then-lift")
    assert dep is not None
    assert verify_dependency([t for t, _ in dep], [a for _, a in dep])


def test_verify_dependency_rejects_wrong_vector():
    assert not verify_dependency([(2,), (1, 1)], [Fraction(1), Fraction(1)])


def test_artificial_rational_dependency_lifts_exactly():
    # rows: v, w, and 2/3 v - 5/7 w; the dependency must be recovered exactly
    base = monomial_matrix(3)
    v, w = base.rows[0], base.rows[1]
    mix = [Fraction(2, 3) * a - Fraction(5, 7) * b for a, b in zip(v, w)]
    m = RationalMatrix([list(v), list(w), mix])
    rank, dep = rank_and_nullspace(m)
    assert rank == 2 and dep is not None
    for c in range(m.ncols):
        assert dep[0] * v[c] + dep[1] * w[c] + dep[2] * mix[c] == 0
