from collections import Counter

import pytest

from qchroma.graphs import enumerate_multigraphs, random_weighted_multigraphs
from qchroma.verify import (
    DEFAULT_GRID,
    Grid,
    IDENTITY_SUITES,
    SMALL_GRID,
    check_dichromate_potts,
    check_q_dichromate_potts,
    check_u_potts,
    run_identity,
)

CORPUS = list(enumerate_multigraphs(3, 4)) + list(
    random_weighted_multigraphs(15, 4, 5, seed=5)
)


@pytest.mark.parametrize("name", sorted(IDENTITY_SUITES))
def test_each_identity_suite_passes(name):
    graphs = CORPUS
    if name in ("xb-roundtrip", "u-substitution", "u-potts", "dichromate-potts"):
        graphs = [g for g in CORPUS if all(w == 1 for w in g.weights)]
    if name == "u-potts":
        graphs = graphs[:12]
    result = run_identity(name, graphs, SMALL_GRID)
    assert result.ok, result.failures[:3]
    assert result.cases > 0


def test_unknown_identity_rejected():
    with pytest.raises(ValueError):
        run_identity("nope", CORPUS, SMALL_GRID)


def test_weighted_placement_survey_records_findings():
    weighted = [g for g in random_weighted_multigraphs(25, 4, 4, seed=9)
                if any(w > 1 for w in g.weights)]
    result = check_dichromate_potts(weighted, SMALL_GRID, assert_placement=False)
    assert result.ok                      # survey never fails
    assert len(result.findings) == result.cases > 0
    placements = Counter(f["placement"] for f in result.findings)
    # the multiplier placement is the one the recursion satisfies
    assert set(placements) <= {"weight-multiplier", "both"}
    assert placements["weight-multiplier"] > 0


def test_q_dichromate_negative_control_present():
    result = check_q_dichromate_potts(CORPUS[:5])
    control_failures = [f for f in result.failures if "negative-control" in f]
    assert not control_failures
    # the control case is counted
    assert result.cases == 5 * 3 * 3 * 2 + 1


def test_u_potts_findings_name_a_single_normalisation():
    unit = [g for g in CORPUS if all(w == 1 for w in g.weights)][:8]
    result = check_u_potts(unit)
    assert result.ok
    kinds = {f["placement"] for f in result.findings}
    assert "state-sum-times-negative-power" in kinds
    assert "state-sum-times-positive-power" not in kinds


def test_grid_serialisation():
    doc = DEFAULT_GRID.to_json()
    assert doc["q"] == [0, 1, 2, 3]
    assert doc["r"] == ["2", "3/2"]
    custom = Grid(r_values=(2,), q_values=(1,), k_values=(2,), x_values=(1,))
    assert custom.to_json()["k"] == [2]
