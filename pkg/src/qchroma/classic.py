"""Classical partition-indexed graph polynomials and substitution bridges.

The U-polynomial maps each edge subset A to the partition of |V| formed by
the component sizes of (V, A), with a (z-1)-power recording the cycle rank
|A| - |V| + k(A).  The truncated bad-colouring table counts, for each
number b of monochromatic edges and colour-class size vector c, the states
realising them with colours below k.  Both connect to the dichromate by
pure substitution, and those bridges are implemented here so they can be
checked against the independent routes in :mod:`qchroma.chromatic`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    DEFAULT_STATE_CAP_BITS,
    DEFAULT_SUBSET_CAP_BITS,
    SubstitutionError,
    require_state_space,
    require_subset_space,
)
from .chromatic import RExponentTable, Rational
from .graphs import WeightedMultigraph


@dataclass(frozen=True)
class UPolynomial:
    """Integer coefficients keyed by (component-size partition, (z-1)-power)."""

    vertex_count: int
    terms: Mapping[tuple[tuple[int, ...], int], int]

    def coefficient_mass(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, z: Rational, x_values: Mapping[int, Rational]) -> Rational:
        """Exact evaluation with x_values[j] substituted for a size-j part."""
        zm1 = z - 1
        total = 0
        for (partition, d), coeff in self.terms.items():
            prod = coeff * zm1 ** d
            for part in partition:
                prod *= x_values[part]
            total += prod
        return total

    def to_json(self) -> dict:
        rows = [
            {"partition": list(p), "zm1_power": d, "coeff": str(c)}
            for (p, d), c in sorted(
                self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])
            )
        ]
        return {"vertex_count": self.vertex_count, "terms": rows}

    @classmethod
    def from_json(cls, doc: dict) -> "UPolynomial":
        terms = {
            (tuple(int(p) for p in row["partition"]), int(row["zm1_power"])): int(row["coeff"])
            for row in doc["terms"]
        }
        return cls(int(doc["vertex_count"]), terms)


@dataclass(frozen=True)
class XBTable:
    """Counts of states by (monochromatic edge count, colour-class size vector).

    The k-colour truncation is lossless for the coefficients it stores:
    setting the variables of colours >= k to zero does not disturb the
    coefficient at any monomial supported on colours < k.
    """

    k: int
    terms: Mapping[tuple[int, tuple[int, ...]], int]

    def coefficient_mass(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, t: Rational, x_values) -> Rational:
        """Exact value with colour i carrying the weight x_values[i]."""
        total = 0
        for (b, classes), coeff in self.terms.items():
            prod = coeff * t ** b
            for i, c in enumerate(classes):
                if c:
                    prod *= x_values[i] ** c
            total += prod
        return total

    def to_json(self) -> dict:
        rows = [
            {"t_power": b, "classes": list(classes), "coeff": str(coeff)}
            for (b, classes), coeff in sorted(self.terms.items())
        ]
        return {"k": self.k, "terms": rows}

    @classmethod
    def from_json(cls, doc: dict) -> "XBTable":
        terms = {
            (int(row["t_power"]), tuple(int(c) for c in row["classes"])): int(row["coeff"])
            for row in doc["terms"]
        }
        return cls(int(doc["k"]), terms)


def u_polynomial(
    g: WeightedMultigraph, cap_bits: int = DEFAULT_SUBSET_CAP_BITS
) -> UPolynomial:
    """Subset expansion over all 2^|E| spanning subgraphs.

    Runs its own sweep (kept separate from the aggregated profile used by
    the dichromate routes, so substitution identities compare genuinely
    independent computations).
    """
    require_subset_space(g.edge_count, cap_bits)
    n = g.vertex_count
    edges = g.edges
    m = len(edges)
    terms: dict[tuple[tuple[int, ...], int], int] = {}
    for mask in range(1 << m):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        bits = mask
        size = 0
        while bits:
            i = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            size += 1
            ru, rv = find(edges[i][0]), find(edges[i][1])
            if ru != rv:
                parent[ru] = rv
        comp: dict[int, int] = {}
        for v in range(n):
            r = find(v)
            comp[r] = comp.get(r, 0) + 1
        partition = tuple(sorted(comp.values(), reverse=True))
        key = (partition, size - n + len(comp))
        terms[key] = terms.get(key, 0) + 1
    return UPolynomial(n, terms)


def xb_truncated(
    g: WeightedMultigraph, k: int, cap_bits: int = DEFAULT_STATE_CAP_BITS
) -> XBTable:
    """State sum over all k^|V| colourings; weights play no role here."""
    require_state_space(g.vertex_count, k, cap_bits)
    n = g.vertex_count
    if k == 0:
        return XBTable(0, {(0, ()): 1} if n == 0 else {})
    edges = g.edges
    terms: dict[tuple[int, tuple[int, ...]], int] = {}
    for state in itertools.product(range(k), repeat=n):
        mono = 0
        for u, v in edges:
            if state[u] == state[v]:
                mono += 1
        classes = [0] * k
        for v in range(n):
            classes[state[v]] += 1
        key = (mono, tuple(classes))
        terms[key] = terms.get(key, 0) + 1
    return XBTable(k, terms)


def dichromate_from_xb(xb: XBTable, r: Rational, q: int, t: Rational) -> Rational:
    """Evaluate the truncated table at colour weights r**(q**i).

    Substituting x_i = r**(q**i) for i < k (zero beyond) turns the
    bad-colouring table into B(G; t-1, k); the result must match the
    direct dichromate evaluated at x = t - 1.
    """
    x_values = [r ** (q ** i) for i in range(xb.k)]
    return xb.evaluate(t, x_values)


def xb_from_dichromate(table: RExponentTable) -> XBTable:
    """Re-key a unit-weight dichromate table as a bad-colouring table.

    For unit weights the colour-class weight vectors are exactly the class
    size vectors, so the map is the identity on keys.  The re-keying is a
    bijection because no two distinct (t-power, class-vector) keys collide;
    we verify the structural preconditions that make it faithful.
    """
    expected = None
    for (b, classes), coeff in table.terms.items():
        if coeff <= 0:
            raise ValueError(f"non-positive count {coeff} at {(b, classes)}")
        if len(classes) != table.k:
            raise ValueError("class vector length != number of colours")
        total = sum(classes)
        if expected is None:
            expected = total
        elif total != expected:
            raise ValueError(
                "class vectors sum inconsistently; table was not produced "
                "from a unit-weight graph"
            )
    return XBTable(table.k, dict(table.terms))


def dichromate_from_u(
    u: UPolynomial, r: Rational, q: int, k: int, x: Rational
) -> Rational:
    """Recover the dichromate from the U-polynomial by substitution.

    Evaluates U at z = x+1 with a size-j part carrying
    (1/x) * sum_{i<k} r**(j * q**i), then scales by x**|V|.  Undefined at
    x = 0 (use the direct dichromate there).

    The x powers are gathered before evaluating: a term keyed (tau, d)
    carries x**(|V| + d - len(tau)), and the size blocks of tau multiply
    to an x-free product that is cached across calls.
    """
    if x == 0:
        raise SubstitutionError("the U substitution is undefined at x = 0")
    x = Fraction(x)
    total = 0
    xpow: dict[int, Fraction] = {}
    n = u.vertex_count
    for (partition, d), coeff in u.terms.items():
        e = n + d - len(partition)
        p = xpow.get(e)
        if p is None:
            p = xpow[e] = x ** e
        total += coeff * _partition_block_product(partition, r, q, k) * p
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


@functools.lru_cache(maxsize=65536)
def _size_block_value(j: int, r: Rational, q: int, k: int):
    """sum_{i<k} r**(j * q**i), the weight a size-j component carries."""
    return sum(r ** (j * q ** i) for i in range(k))


@functools.lru_cache(maxsize=65536)
def _partition_block_product(partition: tuple, r: Rational, q: int, k: int):
    prod = 1
    for j in partition:
        prod *= _size_block_value(j, r, q, k)
    return prod
