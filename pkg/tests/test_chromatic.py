import itertools
from fractions import Fraction

import pytest

from qchroma.chromatic import (
    EvalPoint,
    clear_caches,
    q_chromatic,
    q_dichromate,
    q_dichromate_falling,
    rq_chromatic_delcon,
    rq_chromatic_statesum,
    rq_chromatic_subset,
    rq_dichromate,
    rq_dichromate_delcon,
    rq_dichromate_symbolic,
    rq_dichromate_subset_symbolic,
    rq_dichromate_table,
)
from qchroma.errors import SizeLimitError
from qchroma.graphs import WeightedMultigraph, enumerate_multigraphs, random_weighted_multigraphs
from qchroma.polynomials import UniPoly

K2 = WeightedMultigraph((1, 1), ((0, 1),))
C3 = WeightedMultigraph((1, 1, 1), ((0, 1), (1, 2), (0, 2)))
SINGLE = WeightedMultigraph((1,), ())
LOOP = WeightedMultigraph((1,), ((0, 0),))
EMPTY = WeightedMultigraph((), ())


def brute_chromatic(g, r, q, k):
    """Independent oracle: direct loop over all assignments."""
    total = 0
    for state in itertools.product(range(k), repeat=g.vertex_count):
        if any(state[u] == state[v] for u, v in g.edges):
            continue
        total += r ** sum(g.weights[v] * q ** state[v] for v in range(g.vertex_count))
    return total


def brute_dichromate(g, r, q, k, x):
    """Independent oracle: direct loop over all edge subsets."""
    total = 0
    m = g.edge_count
    for size in range(m + 1):
        for subset in itertools.combinations(range(m), size):
            summary = g.components(subset)
            prod = Fraction(x) ** size
            for w in summary.weight_multiset:
                prod *= sum(r ** (w * q ** i) for i in range(k))
            total += prod
    return total


def test_single_vertex_power_sum():
    point = EvalPoint(None, 2, 2)
    expected = UniPoly("r", {1: 1, 2: 1})  # r + r^q at q=2
    assert rq_chromatic_statesum(SINGLE, point) == expected
    assert rq_chromatic_subset(SINGLE, point) == expected
    assert rq_chromatic_delcon(SINGLE, point) == expected


def test_k2_two_proper_colourings():
    point = EvalPoint(None, 2, 2)
    expected = UniPoly("r", {3: 2})  # 2 * r^(1+q) at q=2
    for fn in (rq_chromatic_statesum, rq_chromatic_subset, rq_chromatic_delcon):
        assert fn(K2, point) == expected


def test_loop_annihilates():
    point = EvalPoint(2, 3, 2)
    assert rq_chromatic_statesum(LOOP, point) == 0
    assert rq_chromatic_subset(LOOP, point) == 0
    assert rq_chromatic_delcon(LOOP, point) == 0
    bigger = WeightedMultigraph((1, 2), ((0, 1), (1, 1)))
    assert rq_chromatic_delcon(bigger, point) == 0


def test_c3_one_colour_vanishes():
    point = EvalPoint(None, 2, 1)
    assert rq_chromatic_statesum(C3, point).is_zero()
    assert rq_chromatic_subset(C3, point).is_zero()


def test_empty_graph_is_one():
    point = EvalPoint(2, 1, 2)
    assert rq_chromatic_delcon(EMPTY, point) == 1
    assert rq_dichromate_delcon(EMPTY, EvalPoint(2, 1, 2, 5)) == 1


def test_k_zero_conventions():
    point = EvalPoint(2, 1, 0)
    assert rq_chromatic_statesum(SINGLE, point) == 0
    assert rq_chromatic_delcon(SINGLE, point) == 0
    assert rq_dichromate(SINGLE, EvalPoint(2, 1, 0, 1)) == 0
    assert rq_chromatic_statesum(EMPTY, point) == 1


def test_chromatic_polynomial_at_r_one():
    # r = 1 degenerates to the proper-colouring count
    for g, k, count in ((C3, 3, 6), (C3, 2, 0), (K2, 3, 6)):
        assert rq_chromatic_statesum(g, EvalPoint(1, 2, k)) == count
        assert rq_chromatic_delcon(g, EvalPoint(1, 2, k)) == count


def test_weighted_delcon_step_by_hand():
    # contracting K2 with weights (2,1): (r^2 + r^(2q))(r + r^q) - (r^3 + r^(3q))
    g = WeightedMultigraph((2, 1), ((0, 1),))
    q = 2
    r = Fraction(3, 2)
    lhs = rq_chromatic_delcon(g, EvalPoint(r, q, 2))
    expected = (r ** 2 + r ** (2 * q ** 1)) * (r + r ** q) - (r ** 3 + r ** (3 * q))
    assert lhs == expected


def test_dichromate_k2_formula():
    r, q, x = 2, 2, 1
    point = EvalPoint(r, q, 2, x)
    expected = (r + r ** q) ** 2 + x * (r ** 2 + r ** (2 * q))
    assert rq_dichromate(K2, point) == expected
    assert rq_dichromate_delcon(K2, point) == expected


def test_dichromate_loop_factor():
    point = EvalPoint(2, 1, 3, Fraction(7, 3))
    lhs = rq_dichromate(LOOP, point)
    assert lhs == (1 + Fraction(7, 3)) * rq_dichromate(SINGLE, point)
    assert rq_dichromate_delcon(LOOP, point) == lhs


def test_double_edge_two_recursion_steps():
    g = WeightedMultigraph((1, 1), ((0, 1), (0, 1)))
    r, q, k, x = 2, 1, 2, Fraction(1, 2)
    point = EvalPoint(r, q, k, x)
    assert rq_dichromate_delcon(g, point) == brute_dichromate(g, r, q, k, x)


def test_dichromate_at_minus_one_is_chromatic():
    for g in (K2, C3, LOOP, SINGLE):
        for q in (0, 1, 2):
            for k in (0, 1, 2, 3):
                b = rq_dichromate(g, EvalPoint(None, q, k, -1))
                m = rq_chromatic_statesum(g, EvalPoint(None, q, k))
                assert b == m


def test_against_brute_force_oracles():
    graphs = list(enumerate_multigraphs(3, 3)) + list(
        random_weighted_multigraphs(12, 4, 4, seed=11)
    )
    r = Fraction(3, 2)
    for g in graphs:
        for q in (0, 1, 2):
            for k in (0, 1, 2, 3):
                expected = brute_chromatic(g, r, q, k)
                point = EvalPoint(r, q, k)
                assert rq_chromatic_statesum(g, point) == expected
                assert rq_chromatic_subset(g, point) == expected
                assert rq_chromatic_delcon(g, point) == expected
        for q, k, x in ((1, 2, 2), (2, 2, Fraction(7, 3)), (0, 3, -1)):
            expected = brute_dichromate(g, r, q, k, x)
            point = EvalPoint(r, q, k, x)
            assert rq_dichromate(g, point) == expected
            assert rq_dichromate_delcon(g, point) == expected


def test_symbolic_joint_tables_agree():
    for g in enumerate_multigraphs(3, 3):
        for q in (0, 1, 2):
            for k in (1, 2):
                assert rq_dichromate_subset_symbolic(g, q, k) == rq_dichromate_symbolic(g, q, k)


def test_table_single_vertex():
    t = rq_dichromate_table(SINGLE, 2)
    assert dict(t.terms) == {(0, (1, 0)): 1, (0, (0, 1)): 1}


def test_table_k2_and_marginal():
    t = rq_dichromate_table(K2, 2)
    assert dict(t.terms) == {(0, (1, 1)): 2, (1, (2, 0)): 1, (1, (0, 2)): 1}
    assert t.coefficient_mass() == 2 ** K2.vertex_count


def test_table_weighted_k2():
    g = WeightedMultigraph((2, 1), ((0, 1),))
    t = rq_dichromate_table(g, 2)
    assert dict(t.terms) == {
        (0, (2, 1)): 1, (0, (1, 2)): 1, (1, (3, 0)): 1, (1, (0, 3)): 1,
    }


def test_table_evaluation_matches_dichromate():
    for g in (K2, C3, WeightedMultigraph((2, 1, 1), ((0, 1), (1, 2), (0, 0)))):
        for k in (1, 2, 3):
            t = rq_dichromate_table(g, k)
            assert t.coefficient_mass() == k ** g.vertex_count
            for r, q, x in ((2, 1, 1), (Fraction(3, 2), 2, Fraction(7, 3))):
                assert t.evaluate(r, q, x + 1) == rq_dichromate(g, EvalPoint(r, q, k, x))


def test_table_json_roundtrip():
    from qchroma.chromatic import RExponentTable

    t = rq_dichromate_table(C3, 2)
    doc = t.to_json()
    assert doc["k"] == 2
    assert RExponentTable.from_json(doc).terms == dict(t.terms)


def test_q_chromatic_examples():
    assert q_chromatic(K2, 2, 2) == 4
    assert q_chromatic(SINGLE, 3, 2) == 7
    assert q_chromatic(K2, 2, 1) == 2   # q = 1 counts proper colourings


def test_q_chromatic_subset_agreement_pins_interpretation():
    # the oracle that fixes the base-q integer reading of the blocks
    for g in enumerate_multigraphs(4, 4):
        for k in (0, 1, 2, 3):
            for q in (0, 1, 2, 3):
                assert q_chromatic(g, k, q, "statesum") == q_chromatic(g, k, q, "subset")


def test_q_dichromate_examples():
    assert q_dichromate(SINGLE, 5, 3, 2) == 7          # block of one vertex
    assert q_dichromate(K2, 1, 2, 2) == 14
    assert q_dichromate(K2, -1, 3, 1) == 6             # k(k-1) at q = 1


def test_falling_factorial_control_fails():
    # the falling-factorial reading disagrees with the spin state sum value 14
    assert q_dichromate_falling(K2, 1, 2, 2) == 4


def test_state_cap_guard():
    big = WeightedMultigraph((1,) * 30, ())
    with pytest.raises(SizeLimitError):
        rq_chromatic_statesum(big, EvalPoint(2, 1, 3), cap_bits=22)
    many = WeightedMultigraph((1, 1), tuple((0, 1) for _ in range(25)))
    with pytest.raises(SizeLimitError):
        rq_chromatic_subset(many, EvalPoint(2, 1, 2), cap_bits=22)
    clear_caches()


def test_eval_point_validation():
    with pytest.raises(ValueError):
        EvalPoint(2, -1, 2)
    with pytest.raises(ValueError):
        EvalPoint(2, 1, -2)
    with pytest.raises(ValueError):
        rq_dichromate(K2, EvalPoint(2, 1, 2))  # x missing
