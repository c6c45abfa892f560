"""Sparse exact polynomials over the integers / rationals.

``UniPoly`` is a sparse univariate polynomial keyed by degree and tagged
with its variable name ('q', 'z', 't', 'x', or 'r' for power sums in the
base r).  ``BivariatePoly`` is keyed by (degree in q, degree in z).  All
coefficients are Python ints or ``fractions.Fraction``; no floats ever
enter, and zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ExactDivisionError, VariableMismatchError

Coeff = int | Fraction


def _norm_coeff(c):
    """Collapse integral Fractions to int; keep exact value otherwise."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class UniPoly:
    """Sparse univariate polynomial with exact coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Mapping[int, "Coeff"] | None = None):
        self.var = var
        clean = {}
        if coeffs:
            for d, c in coeffs.items():
                if c:
                    if d < 0:
                        raise ValueError("negative degree")
                    clean[d] = _norm_coeff(c)
        self.coeffs = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "UniPoly":
        return cls(var, {})

    @classmethod
    def constant(cls, var: str, c) -> "UniPoly":
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, var: str, degree: int, c=1) -> "UniPoly":
        return cls(var, {degree: c})

    # -- queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Max degree, or -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: _norm_coeff(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in sorted(self.coeffs, reverse=True):
            c = self.coeffs[d]
            if d == 0:
                terms.append(f"{c}")
            elif d == 1:
                terms.append(f"{c}*{self.var}" if c != 1 else self.var)
            else:
                terms.append(f"{c}*{self.var}^{d}" if c != 1 else f"{self.var}^{d}")
        return " + ".join(terms)

    def _check_var(self, other: "UniPoly"):
        if self.var != other.var:
            raise VariableMismatchError(f"cannot combine {self.var!r} with {other.var!r}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(self.var, other)
        self._check_var(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return UniPoly(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(self.var, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly.zero(self.var)
            return UniPoly(self.var, {d: c * other for d, c in self.coeffs.items()})
        self._check_var(other)
        out: dict[int, "Coeff"] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                s = out.get(d, 0) + c1 * c2
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(self.var, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def exact_div(self, den: "UniPoly") -> "UniPoly":
        """Exact quotient self / den; raises ExactDivisionError on remainder."""
        self._check_var(den)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return UniPoly.zero(self.var)
        rem = {d: Fraction(c) for d, c in self.coeffs.items()}
        dd = den.degree
        dlead = Fraction(den.coeffs[dd])
        quot: dict[int, Fraction] = {}
        while rem:
            rd = max(rem)
            if rd < dd:
                raise ExactDivisionError(f"nonzero remainder of degree {rd}")
            f = rem[rd] / dlead
            quot[rd - dd] = f
            for d2, c2 in den.coeffs.items():
                d = rd - dd + d2
                s = rem.get(d, 0) - f * c2
                if s:
                    rem[d] = s
                else:
                    rem.pop(d, None)
        return UniPoly(self.var, quot)

    # -- evaluation / conversion ---------------------------------------------

    def evaluate(self, value):
        """Exact evaluation at an int or Fraction point."""
        total = 0
        for d, c in self.coeffs.items():
            total += c * value ** d
        return _norm_coeff(total) if isinstance(total, Fraction) else total

    def retag(self, var: str) -> "UniPoly":
        return UniPoly(var, self.coeffs)

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "terms": [[d, str(self.coeffs[d])] for d in sorted(self.coeffs)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "UniPoly":
        return cls(doc["var"], {int(d): Fraction(c) for d, c in doc["terms"]})


class BivariatePoly:
    """Sparse polynomial in two variables, keyed by (degree1, degree2)."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, coeffs: Mapping[tuple[int, int], "Coeff"] | None = None,
                 vars: tuple[str, str] = ("q", "z")):
        self.vars = vars
        clean = {}
        if coeffs:
            for key, c in coeffs.items():
                if c:
                    clean[key] = _norm_coeff(c)
        self.coeffs = clean

    @classmethod
    def zero(cls, vars: tuple[str, str] = ("q", "z")) -> "BivariatePoly":
        return cls({}, vars)

    @classmethod
    def outer(cls, p: UniPoly, q: UniPoly) -> "BivariatePoly":
        """Product p(first) * q(second) of two univariate polynomials."""
        return cls(
            {(d1, d2): c1 * c2 for d1, c1 in p.coeffs.items() for d2, c2 in q.coeffs.items()},
            vars=(p.var, q.var),
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self.vars == other.vars and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        u, v = self.vars
        parts = [
            f"{c}*{u}^{i}*{v}^{j}"
            for (i, j), c in sorted(self.coeffs.items())
        ]
        return " + ".join(parts)

    def _check_vars(self, other: "BivariatePoly"):
        if self.vars != other.vars:
            raise VariableMismatchError(f"cannot combine {self.vars} with {other.vars}")

    def __add__(self, other: "BivariatePoly"):
        self._check_vars(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return BivariatePoly(out, self.vars)

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.coeffs.items()}, self.vars)

    def __sub__(self, other: "BivariatePoly"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return BivariatePoly.zero(self.vars)
            return BivariatePoly({k: c * other for k, c in self.coeffs.items()}, self.vars)
        self._check_vars(other)
        out: dict[tuple[int, int], "Coeff"] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return BivariatePoly(out, self.vars)

    __rmul__ = __mul__

    def degrees(self) -> tuple[int, int]:
        """(max degree in first var, max degree in second var); (-1,-1) if zero."""
        if not self.coeffs:
            return (-1, -1)
        return (max(i for i, _ in self.coeffs), max(j for _, j in self.coeffs))

    def substitute_second_power(self, power: int) -> UniPoly:
        """Substitute second variable := first**power; result in the first variable."""
        out: dict[int, "Coeff"] = {}
        for (i, j), c in self.coeffs.items():
            d = i + j * power
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return UniPoly(self.vars[0], out)

    def evaluate(self, first, second):
        total = 0
        for (i, j), c in self.coeffs.items():
            total += c * first ** i * second ** j
        return _norm_coeff(total) if isinstance(total, Fraction) else total

    def to_json(self) -> list:
        return [[i, j, str(c)] for (i, j), c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, doc: Iterable, vars: tuple[str, str] = ("q", "z")) -> "BivariatePoly":
        return cls({(int(i), int(j)): Fraction(c) for i, j, c in doc}, vars)


def q_integer(k: int, m: int = 1) -> UniPoly:
    """The base-q**m integer [k]: 1 + q**m + ... + q**((k-1)m).

    Zero polynomial for k = 0.  This is the reading of the bracketed
    count symbol under which all subset expansions here close (the
    falling-factorial reading fails a brute-force colouring check).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if m < 1:
        raise ValueError("m must be positive")
    return UniPoly("q", {i * m: 1 for i in range(k)})


def poly_mul(p, q):
    """Exact product of two like-tagged polynomials (module-level alias)."""
    return p * q


def poly_exact_div(num: UniPoly, den: UniPoly) -> UniPoly:
    """Exact quotient in Z[var]; ExactDivisionError if division is inexact."""
    return num.exact_div(den)
