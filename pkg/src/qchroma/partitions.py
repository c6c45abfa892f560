"""Integer partitions and the rank bound that kills their conjectured independence.

For a partition tau = (n_1 >= ... >= n_k) of n, the row sequence attaches
to every y >= 0 the polynomial product over parts of
(q**(n_i*y) + q**(n_i*(y-1)) + ... + 1).  Clearing denominators with
P(q) = (q-1)(q^2-1)...(q^n-1) lifts each row to a bivariate polynomial
a(tau,q) * b(tau,z) living in a space of dimension (1+C(n,2))*(1+n) =
(n^3+n+2)/2; as soon as the partition count p(n) exceeds that bound, the
rows are rationally dependent.  The crossover happens exactly at n = 39.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import SizeLimitError
from .linalg import (
    DEFAULT_PRIME,
    RationalMatrix,
    crt_combine,
    prime_stream,
    rank_and_nullspace,
    rational_reconstruction,
)
from .polynomials import BivariatePoly, UniPoly

Partition = tuple[int, ...]


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield ()
        return

    def rec(remaining: int, largest: int, prefix: tuple):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(largest, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def partition_count(n: int, _memo={0: 1}) -> int:
    """p(n) via Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n in _memo:
        return _memo[n]
    for m in range(max(_memo) + 1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if j % 2 == 1 else -1
            if g1 <= m:
                total += sign * _memo[m - g1]
            if g2 <= m:
                total += sign * _memo[m - g2]
            j += 1
        _memo[m] = total
    return _memo[n]


def geometric_product(tau: Sequence[int], y: int) -> UniPoly:
    """Product over parts of 1 + q**n_i + ... + q**(n_i * y)."""
    if y < 0:
        raise ValueError("y must be non-negative")
    out = UniPoly.constant("q", 1)
    for part in tau:
        out = out * UniPoly("q", {part * j: 1 for j in range(y + 1)})
    return out


def qpoch(n: int) -> UniPoly:
    """(q-1)(q^2-1)...(q^n-1); degree n(n+1)/2."""
    if n < 1:
        raise ValueError("n must be positive")
    out = UniPoly.constant("q", 1)
    for i in range(1, n + 1):
        out = out * UniPoly("q", {i: 1, 0: -1})
    return out


@dataclass(frozen=True)
class RowFactors:
    """The lifted row of a partition: q-factor, z-factor, and their product."""

    tau: Partition
    q_factor: UniPoly      # qpoch(n) / prod (q**n_i - 1); degree C(n,2)
    z_factor: UniPoly      # prod (z**n_i - 1); degree n
    product: BivariatePoly


def row_factors(tau: Sequence[int]) -> RowFactors:
    """Factor the denominator-cleared row polynomial of ``tau``.

    The division is exact because the multiplicity of each root of unity in
    the parts' product is at most its multiplicity in qpoch(n); a failure
    here means a bug, not bad input.
    """
    tau = tuple(tau)
    if not tau or any(p < 1 for p in tau) or list(tau) != sorted(tau, reverse=True):
        raise ValueError(f"{tau!r} is not a partition (non-increasing, parts >= 1)")
    n = sum(tau)
    denominator = UniPoly.constant("q", 1)
    for part in tau:
        denominator = denominator * UniPoly("q", {part: 1, 0: -1})
    q_factor = qpoch(n).exact_div(denominator)
    z_factor = UniPoly.constant("z", 1)
    for part in tau:
        z_factor = z_factor * UniPoly("z", {part: 1, 0: -1})
    return RowFactors(
        tau=tau,
        q_factor=q_factor,
        z_factor=z_factor,
        product=BivariatePoly.outer(q_factor, z_factor),
    )


def geometric_product_via_factors(tau: Sequence[int], y: int) -> UniPoly:
    """Recompute the row polynomial through the bivariate lift.

    Substitutes z = q**(y+1) into the lifted row and divides by qpoch(n)
    exactly; must agree with :func:`geometric_product` for every y.
    """
    if y < 0:
        raise ValueError("y must be non-negative")
    factors = row_factors(tau)
    collapsed = factors.product.substitute_second_power(y + 1)
    return collapsed.exact_div(qpoch(sum(factors.tau)))


def monomial_matrix(
    n: int,
    taus: Sequence[Sequence[int]] | None = None,
    max_n: int = 16,
) -> RationalMatrix:
    """Rows of lifted-row coefficients over the monomials q**i * z**j.

    Columns are indexed by (i, j) with 0 <= i <= C(n,2) and 0 <= j <= n, in
    row-major order; one row per partition of n (or per requested tau).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise SizeLimitError(f"monomial matrix for n={n} exceeds the n<={max_n} cap")
    qdim = comb(n, 2) + 1
    zdim = n + 1
    rows = []
    for tau in (partitions(n) if taus is None else map(tuple, taus)):
        factors = row_factors(tau)
        row = [0] * (qdim * zdim)
        for (i, j), c in factors.product.coeffs.items():
            row[i * zdim + j] = c
        rows.append(row)
    return RationalMatrix(rows)


def monomial_rank(n: int, mode: str = "exact", prime: int | None = None,
                  max_n: int = 16) -> int:
    """Rank of the lifted-row matrix; an upper bound for the rank of the
    infinite row-sequence matrix (substituting z = q**(y+1) preserves any
    linear dependency)."""
    matrix = monomial_matrix(n, max_n=max_n)
    return rank_and_nullspace(matrix, mode=mode, prime=prime)[0]


@dataclass(frozen=True)
class ThresholdRow:
    n: int
    partition_count: int
    bound: int            # (n**3 + n + 2) // 2
    exceeds: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partitions": self.partition_count,
            "bound": self.bound,
            "exceeds": self.exceeds,
        }


def threshold_scan(n_max: int) -> list[ThresholdRow]:
    """Compare p(n) with (n^3+n+2)/2 for n = 1..n_max.

    The first n where the partition count wins is where more rows than
    dimensions force a rational dependency; the crossover is at n = 39
    (p(39) = 31185 against a bound of 29680) and never reverts.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    rows = []
    for n in range(1, n_max + 1):
        count = partition_count(n)
        bound = (n ** 3 + n + 2) // 2
        rows.append(ThresholdRow(n, count, bound, count > bound))
    return rows


def verify_dependency(
    taus: Sequence[Partition], alphas: Sequence[Fraction]
) -> bool:
    """Exact symbolic check that sum alpha_tau * lifted_row(tau) vanishes."""
    total = BivariatePoly.zero()
    for tau, alpha in zip(taus, alphas):
        if alpha:
            total = total + row_factors(tau).product * alpha
    return total.is_zero()


def find_dependency(
    n: int,
    taus: Sequence[Sequence[int]] | None = None,
    mode: str = "modular-then-lift",
    max_primes: int = 12,
    max_n: int = 60,
):
    """A nonzero rational dependency among the lifted rows, or None.

    ``mode`` 'exact' eliminates over the integers directly; the default
    finds a candidate modulo word-sized primes, lifts it by CRT + rational
    reconstruction, and then re-verifies it symbolically (the modular
    shortcut is never trusted on its own).  Returns a list of
    (partition, coefficient) pairs restricted to the nonzero support.
    """
    if taus is None:
        if n > max_n:
            raise SizeLimitError(f"n={n} exceeds the n<={max_n} cap")
        taus = list(partitions(n))
    else:
        taus = [tuple(t) for t in taus]
    matrix = monomial_matrix(n, taus=taus, max_n=max(n, max_n))

    if mode == "exact":
        _rank, dep = rank_and_nullspace(matrix, mode="exact")
        if dep is None:
            return None
        if not verify_dependency(taus, dep):
            raise AssertionError("exact elimination produced an unverifiable dependency")
        return [(tau, alpha) for tau, alpha in zip(taus, dep) if alpha]

    if mode == "modular-then-lift":
        residues = None
        modulus = None
        pattern = None
        primes = prime_stream(DEFAULT_PRIME)
        for _ in range(max_primes):
            p = next(primes)
            rank_p, dep_p = rank_and_nullspace(matrix, mode="modular", prime=p)
            if dep_p is None:
                return None
            support = tuple(i for i, v in enumerate(dep_p) if v)
            if residues is None:
                residues, modulus, pattern = list(dep_p), p, support
            elif support != pattern:
                # bad reduction for one of the primes; restart from this one
                residues, modulus, pattern = list(dep_p), p, support
            else:
                residues = [
                    crt_combine(r1, modulus, r2, p)[0]
                    for r1, r2 in zip(residues, dep_p)
                ]
                modulus *= p
            candidate = [rational_reconstruction(r, modulus) for r in residues]
            if all(c is not None for c in candidate):
                if verify_dependency(taus, candidate):
                    return [
                        (tau, alpha) for tau, alpha in zip(taus, candidate) if alpha
                    ]
        raise ArithmeticError(
            f"no verified dependency after {max_primes} primes; "
            "increase max_primes or use mode='exact'"
        )

    raise ValueError(f"unknown mode {mode!r}")
