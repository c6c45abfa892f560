"""k-state Potts partition function with a site-dependent external field,
plus executable checks of its correspondences with the dichromate family.

The identity checks prefer an exact rational surrogate: wherever a formula
is polynomial in e**(beta*J), we substitute e**(beta*J) = 1 + x with x an
exact rational, so agreement is tested at zero tolerance.  Floating point
appears only in the U-polynomial correspondence, whose external field is
inherently real; its check runs at a relative tolerance and reports which
normalisation of the (e**(beta*J) - 1)**|V| factor is consistent, rather
than asserting one.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import DEFAULT_STATE_CAP_BITS, require_state_space
from .chromatic import EvalPoint, Rational, rq_dichromate_delcon, q_dichromate
from .classic import u_polynomial
from .graphs import WeightedMultigraph

#: A spin state assigns one of k spins to each vertex.
SpinState = Sequence[int]


@dataclass(frozen=True)
class PottsField:
    """Model parameters: spin count, per-vertex field lists, coupling, beta.

    ``field[v]`` is the ordered list (H_{v,0}, ..., H_{v,k-1}); a missing
    vertex means zero field there.
    """

    k: int
    coupling: float = 1.0
    beta: float = 1.0
    field: Mapping[int, Sequence[float]] | None = None

    def field_at(self, v: int) -> Sequence[float]:
        if self.field is None:
            return (0.0,) * self.k
        row = self.field.get(v)
        if row is None:
            return (0.0,) * self.k
        if len(row) != self.k:
            raise ValueError(f"field list at vertex {v} must have length k={self.k}")
        return row


def hamiltonian(g: WeightedMultigraph, state: SpinState, model: PottsField) -> float:
    """-J * (monochromatic edge count) - sum_v H_{v, state[v]}."""
    if len(state) != g.vertex_count:
        raise ValueError("state must assign a spin to every vertex")
    mono = 0
    for u, v in g.edges:
        if state[u] == state[v]:
            mono += 1
    h = -model.coupling * mono
    for v in range(g.vertex_count):
        h -= model.field_at(v)[state[v]]
    return h


def partition_function(
    g: WeightedMultigraph, model: PottsField, cap_bits: int = DEFAULT_STATE_CAP_BITS
) -> float:
    """Sum of exp(-beta * h(state)) over all k^|V| states."""
    require_state_space(g.vertex_count, model.k, cap_bits)
    total = 0.0
    for state in itertools.product(range(model.k), repeat=g.vertex_count):
        total += math.exp(-model.beta * hamiltonian(g, state, model))
    return total


def _monochromatic_count(edges, state) -> int:
    mono = 0
    for u, v in edges:
        if state[u] == state[v]:
            mono += 1
    return mono


def _as_int(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


# State tables for the exact identity checks.  These enumerate all k^|V|
# states with itertools (independently of the recursive enumerations in
# qchroma.chromatic) and are cached because the identity suites revisit the
# same graph at many grid points.


@functools.lru_cache(maxsize=4096)
def _field_class_table(g: WeightedMultigraph, k: int) -> tuple:
    """((mono edges, colour-class weight vector), count) over all states."""
    n = g.vertex_count
    if k == 0:
        return (((0, ()), 1),) if n == 0 else ()
    edges = g.edges
    weights = g.weights
    table: dict[tuple[int, tuple[int, ...]], int] = {}
    for state in itertools.product(range(k), repeat=n):
        mono = 0
        for u, v in edges:
            if state[u] == state[v]:
                mono += 1
        classes = [0] * k
        for v in range(n):
            classes[state[v]] += weights[v]
        key = (mono, tuple(classes))
        table[key] = table.get(key, 0) + 1
    return tuple(sorted(table.items()))


@functools.lru_cache(maxsize=16384)
def _field_multiplier_items(g: WeightedMultigraph, q: int, k: int) -> tuple:
    """((mono, r-exponent), count) with the weight multiplying q**spin."""
    acc: dict[tuple[int, int], int] = {}
    for (mono, classes), count in _field_class_table(g, k):
        e = sum(c * q ** i for i, c in enumerate(classes))
        key = (mono, e)
        acc[key] = acc.get(key, 0) + count
    return tuple(sorted(acc.items()))


@functools.lru_cache(maxsize=16384)
def _field_exponent_items(g: WeightedMultigraph, q: int, k: int) -> tuple:
    """((mono, r-exponent), count) with the weight inside the q power."""
    n = g.vertex_count
    if k == 0:
        return (((0, 0), 1),) if n == 0 else ()
    edges = g.edges
    weights = g.weights
    acc: dict[tuple[int, int], int] = {}
    for state in itertools.product(range(k), repeat=n):
        mono = 0
        for u, v in edges:
            if state[u] == state[v]:
                mono += 1
        e = sum(q ** (weights[v] * state[v]) for v in range(n))
        key = (mono, e)
        acc[key] = acc.get(key, 0) + 1
    return tuple(sorted(acc.items()))


@functools.lru_cache(maxsize=4096)
def _spin_sum_table(g: WeightedMultigraph, k: int) -> tuple:
    """((mono edges, sum of spins), count) over all states; q-independent."""
    n = g.vertex_count
    if k == 0:
        return (((0, 0), 1),) if n == 0 else ()
    edges = g.edges
    acc: dict[tuple[int, int], int] = {}
    for state in itertools.product(range(k), repeat=n):
        mono = 0
        for u, v in edges:
            if state[u] == state[v]:
                mono += 1
        key = (mono, sum(state))
        acc[key] = acc.get(key, 0) + 1
    return tuple(sorted(acc.items()))


def field_table_x_basis(g: WeightedMultigraph, q: int, k: int) -> dict:
    """The field state sum rewritten as {(x-degree, r-exponent): coeff}.

    Expanding (1 + x)**mono over all states under the weight-multiplier
    placement yields a table directly comparable with the joint output of
    the dichromate deletion-contraction recursion; table equality proves
    the correspondence for every rational (r, x) at once.
    """
    acc: dict[tuple[int, int], int] = {}
    for (mono, e), count in _field_multiplier_items(g, q, k):
        for j in range(mono + 1):
            key = (j, e)
            acc[key] = acc.get(key, 0) + count * comb(mono, j)
    return acc


def clear_potts_caches() -> None:
    _field_class_table.cache_clear()
    _field_multiplier_items.cache_clear()
    _field_exponent_items.cache_clear()
    _spin_sum_table.cache_clear()


@dataclass(frozen=True)
class PlacementReport:
    """Outcome of the weighted dichromate / field state-sum comparison.

    ``rhs_weight_multiplier`` exponentiates r by sum_v w(v) * q**s(v);
    ``rhs_weight_exponent`` by sum_v q**(w(v) * s(v)).  The two coincide on
    unit weights and are both reported for heavier vertices, where only
    one of them can satisfy the deletion-contraction recursion.
    """

    lhs: Rational
    rhs_weight_multiplier: Rational
    rhs_weight_exponent: Rational
    matches_multiplier: bool
    matches_exponent: bool

    @property
    def placement(self) -> str:
        if self.matches_multiplier and self.matches_exponent:
            return "both"
        if self.matches_multiplier:
            return "weight-multiplier"
        if self.matches_exponent:
            return "weight-exponent"
        return "neither"

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs),
            "rhs": {
                "weight-multiplier": str(self.rhs_weight_multiplier),
                "weight-exponent": str(self.rhs_weight_exponent),
            },
            "match": self.matches_multiplier or self.matches_exponent,
            "placement": self.placement,
        }


def dichromate_potts_report(
    g: WeightedMultigraph,
    r: Rational,
    q: int,
    k: int,
    x: Rational,
    cap_bits: int = DEFAULT_STATE_CAP_BITS,
) -> PlacementReport:
    """Compare the dichromate recursion against the field-weighted state sum.

    The state sum uses the exact surrogate (1+x)**mono for the edge
    Boltzmann factor and r**(field exponent) for the external field, under
    both candidate placements of the vertex weight.  A mismatch is a
    reported finding, not an exception.
    """
    require_state_space(g.vertex_count, k, cap_bits)
    lhs = rq_dichromate_delcon(g, EvalPoint(r, q, k, x))
    base = 1 + x
    multiplier_sum = 0
    for (mono, e), count in _field_multiplier_items(g, q, k):
        multiplier_sum += count * base ** mono * r ** e
    if all(w == 1 for w in g.weights):
        exponent_sum = multiplier_sum
    else:
        exponent_sum = 0
        for (mono, e), count in _field_exponent_items(g, q, k):
            exponent_sum += count * base ** mono * r ** e
    multiplier_sum = _as_int(multiplier_sum)
    exponent_sum = _as_int(exponent_sum)
    return PlacementReport(
        lhs=lhs,
        rhs_weight_multiplier=multiplier_sum,
        rhs_weight_exponent=exponent_sum,
        matches_multiplier=multiplier_sum == lhs,
        matches_exponent=exponent_sum == lhs,
    )


@dataclass(frozen=True)
class ExactCheckReport:
    lhs: Rational
    rhs: Rational
    match: bool

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "match": self.match}


def q_dichromate_potts_report(
    g: WeightedMultigraph,
    q: int,
    k: int,
    x: Rational,
    cap_bits: int = DEFAULT_STATE_CAP_BITS,
) -> ExactCheckReport:
    """Check the q-weighted state sum against the subset-expansion value.

    The state sum weights a state s by q**(sum_v s(v)) * (1+x)**mono(s);
    it must equal the subset expansion with base-q integer blocks at
    y = k (exact in x and q).
    """
    require_state_space(g.vertex_count, k, cap_bits)
    lhs = q_dichromate(g, x, k, q)
    base = 1 + x
    total = 0
    for (mono, spin_sum), count in _spin_sum_table(g, k):
        total += count * q ** spin_sum * base ** mono
    return ExactCheckReport(lhs=lhs, rhs=_as_int(total), match=lhs == _as_int(total))


@dataclass(frozen=True)
class NormalisationReport:
    """Determination of the factor placement in the U / Potts correspondence.

    ``u_value`` is U evaluated at z = e**(beta*J) with the size-j variable
    carrying sum_h e**(j*beta*h) / (e**(beta*J) - 1); ``state_sum`` is the
    field state sum.  The report records which power of
    (e**(beta*J) - 1)**|V| reconciles them at the given relative tolerance.
    """

    u_value: float
    state_sum: float
    factor: float
    vertex_count: int
    matches_positive_power: bool
    matches_negative_power: bool
    rel_tol: float

    @property
    def normalisation(self) -> str:
        if self.matches_positive_power and self.matches_negative_power:
            return "both"
        if self.matches_positive_power:
            return "state-sum-times-positive-power"
        if self.matches_negative_power:
            return "state-sum-times-negative-power"
        return "neither"

    def to_json(self) -> dict:
        return {
            "lhs": self.u_value,
            "rhs": self.state_sum,
            "factor": self.factor,
            "vertex_count": self.vertex_count,
            "match": self.matches_positive_power or self.matches_negative_power,
            "placement": self.normalisation,
            "rel_tol": self.rel_tol,
        }


def u_potts_report(
    g: WeightedMultigraph,
    k: int,
    field: Sequence[float],
    beta: float,
    coupling: float,
    rel_tol: float = 1e-9,
    cap_bits: int = DEFAULT_STATE_CAP_BITS,
) -> NormalisationReport:
    """Compare the substituted U-polynomial with the field state sum.

    ``field`` is one global per-spin list (H_0, ..., H_{k-1}) applied at
    every site.  Both candidate placements of the global factor
    (e**(beta*J) - 1)**(+|V|) and (...)**(-|V|) are tested; the verdict is
    recorded, not asserted.
    """
    require_state_space(g.vertex_count, k, cap_bits)
    if len(field) != k:
        raise ValueError("field list must have one entry per spin")
    n = g.vertex_count
    factor = math.exp(beta * coupling) - 1.0
    if factor == 0.0:
        raise ValueError("beta * coupling = 0 makes the substitution singular")
    u = u_polynomial(g)
    sizes = {j for (partition, _d) in u.terms for j in partition}
    x_values = {
        j: sum(math.exp(j * beta * h) for h in field) / factor for j in sizes
    }
    u_value = u.evaluate(math.exp(beta * coupling), x_values)
    state_sum = 0.0
    for state in itertools.product(range(k), repeat=n):
        site = sum(field[s] for s in state)
        mono = _monochromatic_count(g.edges, state)
        state_sum += math.exp(beta * site) * math.exp(beta * coupling * mono)
    pos = state_sum * factor ** n
    neg = state_sum * factor ** (-n)
    return NormalisationReport(
        u_value=u_value,
        state_sum=state_sum,
        factor=factor,
        vertex_count=n,
        matches_positive_power=math.isclose(u_value, pos, rel_tol=rel_tol),
        matches_negative_power=math.isclose(u_value, neg, rel_tol=rel_tol),
        rel_tol=rel_tol,
    )
