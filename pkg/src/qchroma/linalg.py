"""Exact rank and row-dependency computation for rational matrices.

Exact mode runs fraction-free (Bareiss) elimination over the integers:
every intermediate entry is a minor determinant, so the divisions are
exact and coefficient growth stays polynomial.  Modular mode eliminates
over a word-sized prime field and is used as a fast screen; any dependency
it suggests must be lifted (CRT + rational reconstruction) and re-verified
exactly before being trusted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .errors import BadPrimeError

#: Default working prime: 2**61 - 1 (Mersenne, word-sized).
DEFAULT_PRIME = 2305843009213693951


class RationalMatrix:
    """A rectangular matrix of ints / Fractions, stored row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = tuple(rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def rank(self, mode: str = "exact", prime: int | None = None) -> int:
        return rank_and_nullspace(self, mode=mode, prime=prime)[0]

    def row_dependency(self, mode: str = "exact", prime: int | None = None):
        return rank_and_nullspace(self, mode=mode, prime=prime)[1]


def _scaled_integer_rows(matrix: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row; returns (integer rows, row scales)."""
    out, scales = [], []
    for row in matrix.rows:
        denom = 1
        for v in row:
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        out.append([int(v * denom) for v in row])
        scales.append(denom)
    return out, scales


def _bareiss(rows: list[list[int]], main_cols: int) -> int:
    """In-place fraction-free elimination on integer rows.

    Pivots are chosen only within the first ``main_cols`` columns (any
    extra columns ride along, e.g. an augmented identity).  Pivot rows are
    picked by minimal bit length for compactness; the rule is deterministic.
    Returns the rank of the main block.
    """
    nrows = len(rows)
    width = len(rows[0])
    prev = 1
    piv = 0
    for col in range(main_cols):
        if piv >= nrows:
            break
        best = None
        for i in range(piv, nrows):
            v = rows[i][col]
            if v:
                bl = abs(v).bit_length()
                if best is None or bl < best[0] or (bl == best[0] and i < best[1]):
                    best = (bl, i)
        if best is None:
            continue
        if best[1] != piv:
            rows[piv], rows[best[1]] = rows[best[1]], rows[piv]
        p = rows[piv][col]
        prow = rows[piv]
        for r in range(piv + 1, nrows):
            row = rows[r]
            f = row[col]
            if f:
                for c in range(width):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            elif p != prev:
                for c in range(width):
                    row[c] = (p * row[c]) // prev
            row[col] = 0
        prev = p
        piv += 1
    return piv


def _modular_rows(matrix: RationalMatrix, prime: int) -> list[list[int]]:
    out = []
    for row in matrix.rows:
        mrow = []
        for v in row:
            if isinstance(v, Fraction):
                den = v.denominator % prime
                if den == 0:
                    raise BadPrimeError(f"denominator divisible by prime {prime}")
                mrow.append(v.numerator * pow(den, -1, prime) % prime)
            else:
                mrow.append(v % prime)
        out.append(mrow)
    return out


def _modular_eliminate(rows: list[list[int]], main_cols: int, prime: int) -> int:
    """In-place elimination over GF(prime); first-nonzero pivot rule."""
    nrows = len(rows)
    width = len(rows[0])
    piv = 0
    for col in range(main_cols):
        if piv >= nrows:
            break
        sel = None
        for i in range(piv, nrows):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        if sel != piv:
            rows[piv], rows[sel] = rows[sel], rows[piv]
        inv = pow(rows[piv][col], -1, prime)
        prow = rows[piv]
        for c in range(width):
            prow[c] = prow[c] * inv % prime
        for r in range(piv + 1, nrows):
            f = rows[r][col]
            if f:
                row = rows[r]
                for c in range(width):
                    row[c] = (row[c] - f * prow[c]) % prime
        piv += 1
    return piv


def rank_and_nullspace(
    matrix: RationalMatrix, mode: str = "exact", prime: int | None = None
):
    """Rank of the rows, plus one dependency among them when rank < #rows.

    Exact mode returns the dependency as a tuple of Fractions v with
    v . rows = 0 exactly.  Modular mode returns residues mod the prime;
    callers must lift and verify before treating them as exact.  The
    dependency is None when the rows are independent.
    """
    nrows = matrix.nrows
    ncols = matrix.ncols
    if mode == "exact":
        rows, scales = _scaled_integer_rows(matrix)
        for i, row in enumerate(rows):
            row.extend(scales[i] if j == i else 0 for j in range(nrows))
        rank = _bareiss(rows, ncols)
        if rank == nrows:
            return rank, None
        # any row beyond the pivots has a zero main part; its augmented part
        # is an exact integer dependency among the original rows
        aug = rows[rank][ncols:]
        assert all(v == 0 for v in rows[rank][:ncols])
        g = 0
        for v in aug:
            g = gcd(g, v)
        aug = [v // g for v in aug]
        lead = next(v for v in aug if v)
        if lead < 0:
            aug = [-v for v in aug]
        return rank, tuple(Fraction(v) for v in aug)
    if mode == "modular":
        p = prime if prime is not None else DEFAULT_PRIME
        rows = _modular_rows(matrix, p)
        for i, row in enumerate(rows):
            row.extend(1 if j == i else 0 for j in range(nrows))
        rank = _modular_eliminate(rows, ncols, p)
        if rank == nrows:
            return rank, None
        aug = rows[rank][ncols:]
        # normalise so the first nonzero residue is 1 (canonical across primes
        # with the same pivot pattern, enabling entrywise CRT)
        lead = next(v for v in aug if v)
        inv = pow(lead, -1, p)
        return rank, tuple(v * inv % p for v in aug)
    raise ValueError(f"unknown mode {mode!r}")


def rank(matrix: RationalMatrix, mode: str = "exact", prime: int | None = None) -> int:
    return rank_and_nullspace(matrix, mode=mode, prime=prime)[0]


# -- modular lifting utilities ------------------------------------------------


def crt_combine(res1: int, mod1: int, res2: int, mod2: int) -> tuple[int, int]:
    """Combine residues under coprime moduli; returns (residue, modulus)."""
    inv = pow(mod1 % mod2, -1, mod2)
    t = (res2 - res1) % mod2 * inv % mod2
    return res1 + mod1 * t, mod1 * mod2

def rational_reconstruction(residue: int, modulus: int) -> Fraction | None:
    """Recover a/b with |a|, b <= sqrt(modulus/2) from a residue, if possible."""
    residue %= modulus
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue
    s0, s1 = 0, 1
    while r1 > bound:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    num, den = r1, s1
    if den < 0:
        num, den = -num, -den
    if gcd(num, den) != 1:
        return None
    if (num - residue * den) % modulus != 0:
        return None
    return Fraction(num, den)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed base set)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime_below(n: int) -> int:
    """Largest prime strictly below n."""
    cand = n - 1
    if cand % 2 == 0:
        cand -= 1
    while cand > 2:
        if is_probable_prime(cand):
            return cand
        cand -= 2
    return 2


def prime_stream(start: int = DEFAULT_PRIME):
    """Descending stream of word-sized primes starting at ``start``."""
    p = start if is_probable_prime(start) else next_prime_below(start)
    while True:
        yield p
        p = next_prime_below(p)
