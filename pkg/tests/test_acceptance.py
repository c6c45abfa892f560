"""Acceptance battery: every cross-route identity at its stated tolerance.

Runs the full deterministic corpus (all multigraph classes with up to 5
vertices and 8 edges) plus 200 seeded random weighted graphs.  Exact
checks use zero tolerance; the one floating-point correspondence runs at
relative tolerance 1e-9.  Each criterion prints its own PASS line (visible
with ``pytest -s`` or in failure output).

Expected wall time for the whole module is a few minutes.
"""

import math
import time
from collections import Counter
from fractions import Fraction

import pytest

from qchroma.chromatic import clear_caches
from qchroma.graphs import (
    WeightedMultigraph,
    enumerate_multigraphs,
    random_weighted_multigraphs,
)
from qchroma.partitions import (
    geometric_product,
    geometric_product_via_factors,
    monomial_rank,
    partition_count,
    partitions,
    row_factors,
    threshold_scan,
)
from qchroma.potts import clear_potts_caches, dichromate_potts_report, u_potts_report
from qchroma.verify import (
    DEFAULT_GRID,
    check_chromatic_triple,
    check_dichromate_delcon,
    check_dichromate_potts,
    check_q_dichromate_potts,
    check_u_potts,
    check_u_substitution,
    check_xb_roundtrip,
)

MAX_VERTICES = 5
MAX_EDGES = 8
RANDOM_GRAPHS = 200
SEED = 0


@pytest.fixture(scope="module")
def unit_corpus():
    return list(enumerate_multigraphs(MAX_VERTICES, MAX_EDGES))


@pytest.fixture(scope="module")
def weighted_corpus():
    return list(
        random_weighted_multigraphs(RANDOM_GRAPHS, MAX_VERTICES, MAX_EDGES, seed=SEED)
    )


@pytest.fixture(autouse=True)
def fresh_caches():
    clear_caches()
    clear_potts_caches()
    yield
    clear_caches()
    clear_potts_caches()


def _report(name, result, started):
    status = "PASS" if result.ok else "FAIL"
    print(f"ACCEPTANCE {name}: {status} "
          f"({result.cases} cases, {time.time() - started:.1f}s)")
    assert result.ok, result.failures[:5]


def test_criterion_1_triple_agreement(unit_corpus, weighted_corpus):
    """State sum, subset expansion and deletion-contraction agree exactly
    over r in {2, 3/2}, q in 0..3, k in 0..3, on every corpus graph."""
    started = time.time()
    result = check_chromatic_triple(unit_corpus + weighted_corpus, DEFAULT_GRID)
    assert result.cases == (len(unit_corpus) + len(weighted_corpus)) * 16
    _report("1 chromatic-triple", result, started)
    assert time.time() - started < 300    # stated runtime target


def test_criterion_2_dichromate_recursion(unit_corpus, weighted_corpus):
    """Subset dichromate equals its deletion-contraction recursion at
    x in {-1, 1, 2, 7/3}; loop graphs confirm the (x+1) factor."""
    started = time.time()
    result = check_dichromate_delcon(unit_corpus + weighted_corpus, DEFAULT_GRID)
    _report("2 dichromate-delcon", result, started)


def test_criterion_3_field_statesum(unit_corpus, weighted_corpus):
    """The field state sum reproduces the dichromate on unit weights
    (weight-multiplier placement asserted); for weighted graphs the
    placement determination is recorded as a finding, not asserted."""
    started = time.time()
    result = check_dichromate_potts(unit_corpus, DEFAULT_GRID)
    _report("3 dichromate-potts(unit)", result, started)
    survey_graphs = [
        g for g in weighted_corpus if any(w > 1 for w in g.weights)
    ][:60] + [WeightedMultigraph((2, 1), ((0, 1),)), WeightedMultigraph((3, 2), ((0, 1), (0, 1)))]
    survey = check_dichromate_potts(
        survey_graphs, DEFAULT_GRID, assert_placement=False
    )
    placements = Counter(f["placement"] for f in survey.findings)
    print(f"ACCEPTANCE 3 weighted placement survey: {dict(placements)}")
    assert survey.findings, "survey must be produced"
    # every weighted case is explained by at least one placement, and the
    # multiplier placement is the one the recursion satisfies throughout
    assert set(placements) <= {"weight-multiplier", "both"}


def test_criterion_4_xb_equivalence(unit_corpus):
    """Table round-trips between the dichromate and bad-colouring forms,
    and their evaluations, agree exactly for k in {1, 2, 3}."""
    started = time.time()
    result = check_xb_roundtrip(unit_corpus, k_values=(1, 2, 3))
    assert result.cases == len(unit_corpus) * 3
    _report("4 xb-roundtrip", result, started)


def test_criterion_5_u_substitution(unit_corpus):
    """The substituted U-polynomial reproduces the dichromate exactly,
    corpus-wide, on the criterion-2 grid (x = 0 excluded by domain)."""
    started = time.time()
    result = check_u_substitution(unit_corpus, DEFAULT_GRID)
    _report("5 u-substitution", result, started)


def test_criterion_6_spin_statesum(unit_corpus):
    """The q-weighted spin state sum equals the subset expansion for
    q, k in {1,2,3}, x in {1,2}; the falling-factorial reading fails its
    negative control."""
    started = time.time()
    result = check_q_dichromate_potts(
        unit_corpus, q_values=(1, 2, 3), k_values=(1, 2, 3), x_values=(1, 2)
    )
    _report("6 q-dichromate-potts", result, started)
    from qchroma.chromatic import q_dichromate_falling
    from qchroma.potts import q_dichromate_potts_report

    k2 = WeightedMultigraph((1, 1), ((0, 1),))
    assert q_dichromate_falling(k2, 1, 2, 2) == 4
    assert q_dichromate_potts_report(k2, 2, 2, 1).rhs == 14  # control disagrees


def test_criterion_7_partition_machinery():
    """Partition rows: product route equals lifted route (n <= 8, y <= 5);
    factor degrees hold to n = 12; full row rank up to n = 6; the count
    first beats the dimension bound exactly at n = 39."""
    started = time.time()
    for n in range(1, 9):
        for tau in partitions(n):
            for y in range(6):
                assert geometric_product(tau, y) == geometric_product_via_factors(tau, y)
    for n in range(1, 13):
        for tau in partitions(n):
            factors = row_factors(tau)
            assert factors.q_factor.degree == math.comb(n, 2)
            assert factors.z_factor.degree == n
    for n in range(1, 7):
        assert monomial_rank(n, "exact") == partition_count(n)
    rows = threshold_scan(60)
    exceed = [row.n for row in rows if row.exceeds]
    assert exceed == list(range(39, 61))
    assert rows[38].partition_count == 31185 and rows[38].bound == 29680
    elapsed = time.time() - started
    print(f"ACCEPTANCE 7 partition-machinery: PASS ({elapsed:.1f}s)")
    assert elapsed < 120    # stated runtime target


def test_criterion_8_u_potts_normalisation(unit_corpus):
    """The U / field-state-sum comparison determines a normalisation for
    the single vertex and the one-edge graph at rel. tolerance 1e-9."""
    started = time.time()
    single = WeightedMultigraph((1,), ())
    k2 = WeightedMultigraph((1, 1), ((0, 1),))
    determinations = []
    for g in (single, k2):
        for H, coupling in (((0.0, 0.0), math.log(3.0)), ((0.25, -0.5), 0.9)):
            report = u_potts_report(g, 2, H, 1.0, coupling, rel_tol=1e-9)
            assert report.normalisation != "neither"
            determinations.append(report.normalisation)
    assert "state-sum-times-negative-power" in determinations
    assert "state-sum-times-positive-power" not in determinations
    result = check_u_potts([single, k2] + unit_corpus[:20])
    _report("8 u-potts-normalisation", result, started)


@pytest.mark.skip(reason="optional long-running mode: dependency extraction at "
                         "n = 39 needs a ~30k x 30k modular elimination, beyond "
                         "desk scale here; the machinery is exercised at small n")
def test_criterion_9_optional_dependency_at_39():
    from qchroma.partitions import find_dependency, verify_dependency

    dep = find_dependency(39, mode="modular-then-lift", max_primes=64)
    assert dep is not None
    taus = [t for t, _ in dep]
    alphas = [a for _, a in dep]
    assert verify_dependency(taus, alphas)
    for y in range(4):
        total = None
        for tau, alpha in dep:
            term = geometric_product(tau, y) * alpha
            total = term if total is None else total + term
        assert total.is_zero()
